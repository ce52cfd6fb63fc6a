#include <iostream>

#include "hlskit/cli.hpp"

int main(int argc, char** argv) { return hlskit::run_cli(argc, argv, std::cout, std::cerr); }
