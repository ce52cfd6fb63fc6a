#include "hlskit/riesz.hpp"

#include <atomic>
#include <cmath>
#include <ostream>
#include <sstream>

#include "hlskit/errors.hpp"
#include "hlskit/parallel.hpp"

namespace hlskit {

namespace {

constexpr std::size_t kMaxKernelTable = std::size_t{1} << 25;

void check_order(double lambda, std::size_t m, bool allow_endpoint) {
  const double n = static_cast<double>(m);
  const bool ok = lambda > 0 && (allow_endpoint ? lambda <= n : lambda < n);
  if (!ok) throw input_error("order lambda = " + std::to_string(lambda) + " outside (0, N_m) for N_m = " +
                             std::to_string(m));
}

void check_shapes(const GridFunction& f, const std::vector<Axis>& out_axes) {
  if (out_axes.size() != f.rank()) throw input_error("output grid rank differs from input rank");
  for (const auto& a : out_axes) a.validate();
}

bool same_width(const Axis& a, const Axis& b) {
  return std::abs(a.width() - b.width()) <= 1e-12 * b.width();
}

std::size_t total_cells(const std::vector<Axis>& axes) {
  std::size_t n = 1;
  for (const auto& a : axes) n *= a.cells;
  return n;
}

[[noreturn]] void zero_distance() {
  throw input_error("an output midpoint coincides with an input midpoint; stagger the output grid");
}

// Per-axis |x_k - y_j| tables, N_out x N_in each.
std::vector<std::vector<double>> distance_matrices(const std::vector<Axis>& in, const std::vector<Axis>& out) {
  std::vector<std::vector<double>> d(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) {
    d[i].resize(out[i].cells * in[i].cells);
    for (std::size_t k = 0; k < out[i].cells; ++k)
      for (std::size_t j = 0; j < in[i].cells; ++j)
        d[i][k * in[i].cells + j] = std::abs(out[i].midpoint(k) - in[i].midpoint(j));
  }
  return d;
}

// Pairwise kernel evaluation. Returns false on a zero distance.
bool pairwise_cell(const GridFunction& f, const std::vector<Axis>& out, const std::vector<std::vector<double>>& dist,
                   std::size_t k_flat, double lambda, double& result) {
  const auto& in = f.axes();
  const std::size_t m = in.size();
  std::vector<std::size_t> k(m);
  for (std::size_t i = 0, rest = k_flat; i < m; ++i) {
    k[i] = rest % out[i].cells;
    rest /= out[i].cells;
  }
  const std::size_t n1 = in[0].cells;
  const double* d1 = dist[0].data() + k[0] * n1;
  const auto v = f.values();
  std::vector<std::size_t> j(m, 0);
  double acc = 0.0;
  for (std::size_t row = 0; row < v.size(); row += n1) {
    double outer = 0.0;
    for (std::size_t i = 1; i < m; ++i) outer += dist[i][k[i] * in[i].cells + j[i]];
    for (std::size_t j1 = 0; j1 < n1; ++j1) {
      const double s = outer + d1[j1];
      if (s == 0.0) return false;
      acc += v[row + j1] * std::pow(s, -lambda);
    }
    for (std::size_t i = 1; i < m; ++i) {
      if (++j[i] < in[i].cells) break;
      j[i] = 0;
    }
  }
  result = acc;
  return true;
}

double cell_volume(const std::vector<Axis>& axes) {
  double vol = 1.0;
  for (const auto& a : axes) vol *= a.width();
  return vol;
}

class ToeplitzKernel {
 public:
  ToeplitzKernel(const std::vector<Axis>& in, const std::vector<Axis>& out, double lambda) : in_(in) {
    const std::size_t m = in.size();
    extent_.resize(m);
    stride_.resize(m);
    std::size_t size = 1;
    for (std::size_t i = 0; i < m; ++i) {
      extent_[i] = out[i].cells + in[i].cells - 1;
      stride_[i] = size;
      size *= extent_[i];
    }
    std::vector<std::vector<double>> axis_dist(m);
    for (std::size_t i = 0; i < m; ++i) {
      const double c = out[i].midpoint(0) - in[i].midpoint(0);
      const double h = in[i].width();
      const auto shift = static_cast<double>(in[i].cells - 1);
      axis_dist[i].resize(extent_[i]);
      for (std::size_t t = 0; t < extent_[i]; ++t)
        axis_dist[i][t] = std::abs(c + (static_cast<double>(t) - shift) * h);
    }
    table_.resize(size);
    std::vector<std::size_t> t(m, 0);
    for (std::size_t flat = 0; flat < size; ++flat) {
      double s = 0.0;
      for (std::size_t i = 0; i < m; ++i) s += axis_dist[i][t[i]];
      if (s == 0.0) zero_distance();
      table_[flat] = std::pow(s, -lambda);
      for (std::size_t i = 0; i < m; ++i) {
        if (++t[i] < extent_[i]) break;
        t[i] = 0;
      }
    }
  }

  static bool fits(const std::vector<Axis>& in, const std::vector<Axis>& out) {
    std::size_t size = 1;
    for (std::size_t i = 0; i < in.size(); ++i) {
      if (!same_width(out[i], in[i])) return false;
      size *= out[i].cells + in[i].cells - 1;
      if (size > kMaxKernelTable) return false;
    }
    return true;
  }

  double cell(std::span<const double> v, std::span<const std::size_t> k, std::vector<std::size_t>& j) const {
    const std::size_t m = in_.size();
    const std::size_t n1 = in_[0].cells;
    std::fill(j.begin(), j.end(), 0);
    double acc = 0.0;
    for (std::size_t row = 0; row < v.size(); row += n1) {
      std::size_t base = k[0] + n1 - 1;
      for (std::size_t i = 1; i < m; ++i) base += (k[i] + in_[i].cells - 1 - j[i]) * stride_[i];
      const double* kr = table_.data() + base;
      const double* fr = v.data() + row;
      for (std::size_t j1 = 0; j1 < n1; ++j1) acc += fr[j1] * kr[-static_cast<std::ptrdiff_t>(j1)];
      for (std::size_t i = 1; i < m; ++i) {
        if (++j[i] < in_[i].cells) break;
        j[i] = 0;
      }
    }
    return acc;
  }

 private:
  const std::vector<Axis>& in_;
  std::vector<std::size_t> extent_;
  std::vector<std::size_t> stride_;
  std::vector<double> table_;
};

}  // namespace

GridFunction riesz_apply(const GridFunction& f, double lambda, const std::vector<Axis>& out_axes,
                         RieszOptions options) {
  check_shapes(f, out_axes);
  check_order(lambda, f.rank(), options.allow_endpoint_order);
  if (options.exec == Execution::Serial && !ToeplitzKernel::fits(f.axes(), out_axes))
    return riesz_apply_reference(f, lambda, out_axes, options.allow_endpoint_order);

  const std::size_t m = f.rank();
  const std::size_t n_out = total_cells(out_axes);
  const double vol = cell_volume(f.axes());
  std::vector<double> g(n_out, 0.0);
  const auto count = static_cast<long long>(n_out);
  const int workers = options.exec == Execution::Parallel ? worker_count() : 1;

  if (ToeplitzKernel::fits(f.axes(), out_axes)) {
    const ToeplitzKernel kernel(f.axes(), out_axes, lambda);
#pragma omp parallel num_threads(workers)
    {
      std::vector<std::size_t> k(m), j(m);
#pragma omp for schedule(static)
      for (long long kf = 0; kf < count; ++kf) {
        for (std::size_t i = 0, rest = static_cast<std::size_t>(kf); i < m; ++i) {
          k[i] = rest % out_axes[i].cells;
          rest /= out_axes[i].cells;
        }
        g[static_cast<std::size_t>(kf)] = kernel.cell(f.values(), k, j) * vol;
      }
    }
  } else {
    const auto dist = distance_matrices(f.axes(), out_axes);
    std::atomic<bool> degenerate{false};
#pragma omp parallel for schedule(static) num_threads(workers)
    for (long long kf = 0; kf < count; ++kf) {
      double acc = 0.0;
      if (!pairwise_cell(f, out_axes, dist, static_cast<std::size_t>(kf), lambda, acc)) degenerate = true;
      g[static_cast<std::size_t>(kf)] = acc * vol;
    }
    if (degenerate) zero_distance();
  }
  return GridFunction(out_axes, std::move(g));
}

GridFunction riesz_apply_reference(const GridFunction& f, double lambda, const std::vector<Axis>& out_axes,
                                   bool allow_endpoint_order) {
  check_shapes(f, out_axes);
  check_order(lambda, f.rank(), allow_endpoint_order);
  const auto dist = distance_matrices(f.axes(), out_axes);
  const double vol = cell_volume(f.axes());
  std::vector<double> g(total_cells(out_axes));
  for (std::size_t kf = 0; kf < g.size(); ++kf) {
    double acc = 0.0;
    if (!pairwise_cell(f, out_axes, dist, kf, lambda, acc)) zero_distance();
    g[kf] = acc * vol;
  }
  return GridFunction(out_axes, std::move(g));
}

double dilation_check(const GridFunction& f, const GridFunction& f_a, double lambda, double a) {
  if (!(a > 0) || !std::isfinite(a)) throw input_error("dilation factor must be positive");
  if (f_a.rank() != f.rank()) throw input_error("dilated grid has a different rank");
  for (std::size_t i = 0; i < f.rank(); ++i) {
    const Axis& x = f.axes()[i];
    const Axis& y = f_a.axes()[i];
    const double tol = 1e-12 * a * (x.hi - x.lo);
    if (x.cells != y.cells || std::abs(y.lo - a * x.lo) > tol || std::abs(y.hi - a * x.hi) > tol)
      throw input_error("dilated grid is not the dilation of the base grid");
  }
  const auto base = riesz_apply(f, lambda, staggered(f.axes()));
  const auto scaled = riesz_apply(f_a, lambda, staggered(f_a.axes()));
  const double factor = std::pow(a, static_cast<double>(f.rank()) - lambda);
  double worst = 0.0;
  const auto lhs = scaled.values();
  const auto rhs = base.values();
  for (std::size_t k = 0; k < lhs.size(); ++k) {
    const double expected = factor * rhs[k];
    worst = std::max(worst, std::abs(lhs[k] - expected) / expected);
  }
  return worst;
}

double dilation_check(const GridFunction& f, double lambda, double a) {
  return dilation_check(f, f.dilated(a), lambda, a);
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw input_error("slope fit needs >= 2 paired samples");
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0) throw input_error("slope fit needs distinct abscissae");
  return sxy / sxx;
}

namespace {

void check_numeric_spec(const IndexSpec& spec, std::size_t rank) {
  spec.validate();
  if (spec.blocks() != rank) throw input_error("index spec has a different number of blocks than the grid");
  for (int n : spec.dims)
    if (n != 1) throw input_error("numerical experiments use blocks of dimension 1");
  if (!spec.lambda) throw input_error("experiment needs lambda");
}

}  // namespace

ExperimentResult drift_estimate(const GridFunction& f, const IndexSpec& spec, const std::vector<double>& a_values) {
  check_numeric_spec(spec, f.rank());
  if (a_values.size() < 2) throw input_error("drift estimate needs at least two dilation factors");
  for (std::size_t i = 0; i < a_values.size(); ++i) {
    if (!(a_values[i] > 0)) throw input_error("dilation factors must be positive");
    if (i && !(a_values[i] > a_values[i - 1])) throw input_error("dilation factors must be strictly increasing");
  }
  const double lambda = spec.lambda->get_d();

  ExperimentResult result;
  result.name = "drift";
  result.parameter = "a";
  result.context = spec;
  std::vector<double> la, lr;
  for (double a : a_values) {
    const GridFunction fa = f.dilated(a);
    const GridFunction g = riesz_apply(fa, lambda, staggered(fa.axes()));
    const double r = mixed_norm(g, spec.q) / mixed_norm(fa, spec.p);
    result.samples.emplace_back(a, r);
    la.push_back(std::log(a));
    lr.push_back(std::log(r));
  }
  result.fitted_slope = least_squares_slope(la, lr);
  result.expected_slope = Rational(-homogeneity_defect(spec)).get_d();
  return result;
}

namespace {

ProbeCase box_probe(const char* lambda, const char* p, const char* q) {
  ProbeCase c;
  c.spec.dims = {1};
  c.spec.p = {Exponent::parse(p)};
  c.spec.q = {Exponent::parse(q)};
  c.spec.lambda = parse_rational(lambda);
  c.f = Box{{0.0}, {1.0}, 1.0};
  c.domain = {Axis{0.0, 1.0, 64}};
  return c;
}

}  // namespace

ProbeCase endpoint_probe_case() { return box_probe("1", "2", "2"); }
ProbeCase bounded_probe_case() { return box_probe("3/4", "2", "4"); }

ExperimentResult blowup_probe(const ProbeCase& probe, const std::vector<std::size_t>& resolutions) {
  check_numeric_spec(probe.spec, probe.domain.size());
  if (resolutions.size() < 2) throw input_error("blow-up probe needs at least two resolutions");
  for (std::size_t i = 0; i < resolutions.size(); ++i) {
    if (resolutions[i] == 0) throw input_error("resolutions must be positive");
    if (i && resolutions[i] <= resolutions[i - 1]) throw input_error("resolutions must be strictly increasing");
  }
  const double lambda = probe.spec.lambda->get_d();
  ExperimentResult result;
  result.name = "blowup";
  result.parameter = "cells";
  result.context = probe.spec;
  for (std::size_t cells : resolutions) {
    std::vector<Axis> axes = probe.domain;
    for (auto& a : axes) a.cells = cells;
    const GridFunction f = sample(probe.f, axes);
    const GridFunction g = riesz_apply(f, lambda, staggered(f.axes()), RieszOptions{Execution::Parallel, true});
    result.samples.emplace_back(static_cast<double>(cells), mixed_norm(g, probe.spec.q) / mixed_norm(f, probe.spec.p));
  }
  return result;
}

bool grows_without_bound(const ExperimentResult& probe, double min_relative) {
  if (probe.samples.size() < 2) return false;
  for (std::size_t i = 1; i < probe.samples.size(); ++i) {
    const double prev = probe.samples[i - 1].second;
    if (!(probe.samples[i].second - prev >= min_relative * prev) || !(probe.samples[i].second > prev)) return false;
  }
  return true;
}

bool stabilizes(const ExperimentResult& probe, double relative) {
  if (probe.samples.size() < 2) return false;
  const double a = probe.samples[probe.samples.size() - 2].second;
  const double b = probe.samples.back().second;
  return std::abs(b - a) <= relative * std::abs(a);
}

nlohmann::json to_json(const ExperimentResult& result) {
  nlohmann::json samples = nlohmann::json::array();
  for (const auto& [x, y] : result.samples) samples.push_back({{"parameter", x}, {"value", y}});
  nlohmann::json j{{"name", result.name}, {"parameter", result.parameter}, {"samples", samples}};
  j["fitted_slope"] = result.fitted_slope ? nlohmann::json(*result.fitted_slope) : nlohmann::json(nullptr);
  j["expected_slope"] = result.expected_slope ? nlohmann::json(*result.expected_slope) : nlohmann::json(nullptr);
  j["context"] = result.context ? nlohmann::json(result.context->str()) : nlohmann::json(nullptr);
  return j;
}

void write_csv(const ExperimentResult& result, std::ostream& out) {
  std::ostringstream os;
  os.precision(12);
  os << "# experiment: " << result.name << '\n';
  if (result.context) os << "# context: " << result.context->str() << '\n';
  if (result.fitted_slope) os << "# fitted_slope: " << *result.fitted_slope << '\n';
  if (result.expected_slope) os << "# expected_slope: " << *result.expected_slope << '\n';
  os << result.parameter << ",value\n";
  for (const auto& [x, y] : result.samples) os << x << ',' << y << '\n';
  out << os.str();
}

}  // namespace hlskit
