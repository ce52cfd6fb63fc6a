#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hlskit/grid.hpp"
#include "hlskit/index_spec.hpp"
#include "hlskit/test_functions.hpp"

namespace hlskit {

struct RieszOptions {
  Execution exec = Execution::Parallel;
  /// Accept lambda = N_m. Only the blow-up probe needs this.
  bool allow_endpoint_order = false;
};

/// Direct Riemann sum of I_lambda f on the output grid (every block n_i = 1):
///   g(x) = sum_y f(y) (sum_i |x_i - y_i|)^(-lambda) prod_i h_i.
/// Output axes are expected to be staggered against f's axes so that no
/// output midpoint coincides with an input midpoint.
///
/// When input and output cell widths agree the kernel depends only on index
/// differences and is tabulated once; otherwise it is evaluated per pair.
/// Each output cell accumulates serially in ascending input order, so the
/// result is independent of the worker count.
///
/// Throws input_error for rank mismatch, lambda outside (0, m) (or (0, m]
/// with allow_endpoint_order), or a zero distance.
GridFunction riesz_apply(const GridFunction& f, double lambda, const std::vector<Axis>& out_axes,
                         RieszOptions options = {});

/// Serial pairwise evaluation with std::pow; the reference riesz_apply is
/// tested against.
GridFunction riesz_apply_reference(const GridFunction& f, double lambda, const std::vector<Axis>& out_axes,
                                   bool allow_endpoint_order = false);

/// Largest relative deviation between I f_a (x) and a^(m - lambda) I f (x / a)
/// over the staggered output grid, where f_a = f(. / a) is sampled on the
/// dilated axes. Exact identity up to rounding.
double dilation_check(const GridFunction& f, double lambda, double a);

/// Same, with a caller-supplied dilated function. Throws input_error unless
/// f_a lives on the dilation of f's axes with the same cell counts.
double dilation_check(const GridFunction& f, const GridFunction& f_a, double lambda, double a);

struct ExperimentResult {
  std::string name;
  std::string parameter;  // what the first column of `samples` holds
  std::vector<std::pair<double, double>> samples;
  std::optional<double> fitted_slope;
  std::optional<double> expected_slope;
  std::optional<IndexSpec> context;
};

nlohmann::json to_json(const ExperimentResult& result);

/// "# key: value" metadata lines followed by "parameter,value" rows.
void write_csv(const ExperimentResult& result, std::ostream& out);

/// Least-squares slope of log r(a) against log a, where
///   r(a) = ||I_lambda f_a||_{L^q} / ||f_a||_{L^p}
/// on matched dilated grids. Sign convention: the slope estimates
///   N_m - lambda + sum 1/q_i - sum 1/p_i = -homogeneity_defect(spec),
/// so a bounded operator (defect 0) gives a flat line.
/// `spec` must have m = f.rank() blocks of dimension 1 and a lambda.
ExperimentResult drift_estimate(const GridFunction& f, const IndexSpec& spec,
                                const std::vector<double>& a_values = {0.25, 0.5, 1.0, 2.0, 4.0});

/// The tuple and sampled function one refinement probe runs on.
struct ProbeCase {
  IndexSpec spec;          // dims all 1, lambda set
  TestFunctionSpec f;
  std::vector<Axis> domain;  // cell counts are overridden by the resolutions
};

/// m = 1, lambda = 1, p = q = 2, f = indicator of [0, 1] sampled on [0, 1]:
/// the endpoint lambda = N_m, where I_lambda is unbounded.
ProbeCase endpoint_probe_case();

/// m = 1, lambda = 3/4, p = 2, q = 4 with the same f and domain (bounded).
ProbeCase bounded_probe_case();

/// r(h) = ||I_lambda f||_q / ||f||_p for each cell count (applied to every
/// axis). Samples are (cells, r). Needs >= 2 strictly increasing resolutions.
ExperimentResult blowup_probe(const ProbeCase& probe, const std::vector<std::size_t>& resolutions);

/// Strictly increasing, each step by at least `min_relative` of the previous value.
bool grows_without_bound(const ExperimentResult& probe, double min_relative);

/// Last two values agree within `relative`.
bool stabilizes(const ExperimentResult& probe, double relative);

/// Ordinary least-squares slope of y on x.
double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace hlskit
