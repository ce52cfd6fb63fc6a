#pragma once

#include <stdexcept>
#include <string>

namespace hlskit {

// Malformed or out-of-contract input (bad tokens, mismatched lengths, empty grids).
class input_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A formula is undefined at the given exponent (e.g. conjugate of p < 1).
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A theorem hypothesis is violated (e.g. order outside (0, N_m)).
class precondition_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace hlskit
