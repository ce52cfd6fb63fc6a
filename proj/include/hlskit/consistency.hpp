#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hlskit/index_spec.hpp"

namespace hlskit {

enum class LambdaRule { SolveFromHomogeneity, Explicit };

/// A finite grid of index tuples, given by reciprocals 1/p_i, 1/q_i in [0, 1]
/// (0 encodes inf). Slots are ordered p_1..p_m, q_1..q_m; a slot with a
/// fixed reciprocal is not enumerated.
struct LatticeSpec {
  std::vector<int> dims;
  std::vector<Rational> reciprocal_grid;
  LambdaRule lambda_rule = LambdaRule::SolveFromHomogeneity;
  std::vector<Rational> lambdas;                // used with LambdaRule::Explicit
  std::vector<std::optional<Rational>> fixed;   // empty, or one entry per slot

  /// Throws input_error for an empty grid, values outside [0, 1], bad dims, etc.
  void validate() const;

  /// Number of index specs the lattice yields.
  std::size_t size() const;
};

/// {0, 1/6, 1/4, 1/3, 1/2, 2/3, 3/4, 5/6, 1} over m blocks of dimension 1.
LatticeSpec default_lattice(int m);

struct LatticePoint {
  std::size_t index = 0;
  IndexSpec spec;
  bool flagged = false;  // lambda outside (0, N_m)
};

/// Point number `index` in enumeration order: slot p_1 varies slowest, the
/// explicit lambda (if any) fastest.
LatticePoint lattice_point(const LatticeSpec& lattice, std::size_t index);

/// Every point, in enumeration order. Intended for small lattices; the checks
/// below decode points on the fly instead.
std::vector<LatticePoint> enumerate(const LatticeSpec& lattice);

struct CheckFailure {
  std::size_t index = 0;
  std::string check;
  std::string spec;
  std::string expected;
  std::string got;
};

struct ConsistencyReport {
  std::string name;
  std::size_t checks_run = 0;
  std::size_t skipped_flagged = 0;
  std::vector<CheckFailure> failures;

  bool passed() const noexcept { return failures.empty(); }

  /// Adds counts and failures, then restores index order.
  void merge(ConsistencyReport other);
};

nlohmann::json to_json(const ConsistencyReport& report);
void write_failures_csv(const ConsistencyReport& report, std::ostream& out);

struct CheckOptions {
  bool parallel = true;  // false runs the serial reference loop
};

/// gamma verdict of (p, q, lambda) equals that of the dual (q', p', lambda).
ConsistencyReport check_duality(const LatticeSpec& lattice, CheckOptions options = {});
ConsistencyReport check_duality(const IndexSpec& spec);

/// omega_member agrees with omega_via_gamma. lambda plays no role, so flagged
/// points are checked too.
ConsistencyReport check_omega_gamma(const LatticeSpec& lattice, CheckOptions options = {});

/// m = 2 only: classical sufficient regions are members, the two classical
/// counterexample patterns are non-members, members satisfy p_i <= q_i.
ConsistencyReport check_known_regions(const LatticeSpec& lattice, CheckOptions options = {});
ConsistencyReport check_known_regions(const IndexSpec& spec);

/// m = 1 only: gamma_member agrees with the one-block closed form at every point.
ConsistencyReport check_single_block(const LatticeSpec& lattice, CheckOptions options = {});

}  // namespace hlskit
