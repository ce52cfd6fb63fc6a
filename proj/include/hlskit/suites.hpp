#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hlskit/kfunctional.hpp"
#include "hlskit/riesz.hpp"

namespace hlskit {

// Case lists shared by `verify` and the acceptance binary.

struct DilationCase {
  std::string function;  // "gaussian", "box" or "power_tail"
  std::size_t rank = 1;
  Rational lambda;
  double a = 1.0;
};

/// Three functions, rank 1 and 2, lambda in {1/2, 3/4} (plus 3/2 at rank 2),
/// a in {1/2, 2, 4}.
std::vector<DilationCase> default_dilation_cases();

/// The sampled function behind a dilation case, `cells` per axis.
GridFunction dilation_function(const std::string& name, std::size_t rank, std::size_t cells = 128);

struct DriftCase {
  std::string label;
  IndexSpec spec;  // dims all 1
  TestFunctionSpec f;
  std::vector<Axis> axes;
};

std::vector<DriftCase> default_drift_cases();

/// |slope| within 0.02 of 0 for zero defect, otherwise within 5% of |defect|.
bool drift_within_tolerance(const ExperimentResult& result);

/// Random nonnegative simple functions: 1 to max_pieces pieces, values in
/// [0.1, 10], measures in [0.05, 3].
std::vector<SimpleFunction> random_simple_family(std::uint64_t seed, std::size_t count, int max_pieces = 8);

struct InterpolationCase {
  Couple couple;
  Rational theta;
  Exponent q;
};

std::vector<InterpolationCase> default_interpolation_cases();

/// 1/p = (1 - theta)/u + theta/v.
Exponent interpolated_exponent(const InterpolationCase& c);

// Suites.

struct SuiteOutcome {
  std::string name;
  bool passed = true;
  std::vector<std::string> summary;
  nlohmann::json detail;
};

struct SuiteOptions {
  int max_m = 3;  // largest lattice rank for duality and omega-gamma
};

const std::vector<std::string>& suite_names();

/// Throws input_error for an unknown name. "all" is not accepted here.
SuiteOutcome run_suite(std::string_view name, const SuiteOptions& options = {});

/// Decimal with 12 significant digits.
std::string format_real(double x);

}  // namespace hlskit
