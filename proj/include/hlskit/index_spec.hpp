#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hlskit/exponent.hpp"

namespace hlskit {

/// Block dimensions n_1..n_m with exponent vectors p, q and an optional order.
///
/// The order is an unrestricted rational: lattice solving can produce values
/// outside (0, N_m), and the recursive decider descends to lambda - n_m.
struct IndexSpec {
  std::vector<int> dims;
  std::vector<Exponent> p;
  std::vector<Exponent> q;
  std::optional<Rational> lambda;

  std::size_t blocks() const noexcept { return dims.size(); }

  /// N_m = n_1 + ... + n_m.
  long total_dim() const noexcept;

  /// Throws input_error on length mismatch, m == 0 or a nonpositive dimension.
  void validate() const;

  std::string str() const;
};

/// Sum n_i/p_i - sum n_i/q_i - (N_m - lambda); zero iff the scaling balance holds.
Rational homogeneity_defect(const IndexSpec& spec);

/// Kernel power sum n_i (1/p_i' + 1/q_i') of the bilinear inequality.
Rational hls_exponent(const IndexSpec& spec);

/// (dims, q', p', lambda); requires every exponent >= 1.
IndexSpec dual(const IndexSpec& spec);

/// Value lambda that zeroes the homogeneity defect for given (p, q).
Rational solve_lambda(const std::vector<int>& dims, const std::vector<Exponent>& p,
                      const std::vector<Exponent>& q);

}  // namespace hlskit
