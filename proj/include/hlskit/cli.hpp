#pragma once

#include <ostream>

namespace hlskit {

/// Entry point of the `hlskit` tool. Returns the process exit code:
/// 0 computed (and, for verify, every check passed), 1 input error,
/// 2 internal failure or a failed verification suite.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hlskit
