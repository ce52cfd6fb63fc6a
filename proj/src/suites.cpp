#include "hlskit/suites.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

#include "hlskit/consistency.hpp"
#include "hlskit/errors.hpp"

namespace hlskit {

namespace {

double round12(double x) { return std::stod(format_real(x)); }

IndexSpec unit_spec(std::vector<const char*> p, std::vector<const char*> q, const char* lambda) {
  IndexSpec s;
  for (auto t : p) s.p.push_back(Exponent::parse(t));
  for (auto t : q) s.q.push_back(Exponent::parse(t));
  s.dims.assign(s.p.size(), 1);
  s.lambda = parse_rational(lambda);
  return s;
}

std::vector<Axis> cube(std::size_t rank, double lo, double hi, std::size_t cells) {
  return std::vector<Axis>(rank, Axis{lo, hi, cells});
}

SuiteOutcome from_reports(std::string name, const std::vector<ConsistencyReport>& reports) {
  SuiteOutcome out{std::move(name), true, {}, nlohmann::json::array()};
  for (const auto& r : reports) {
    out.passed = out.passed && r.passed();
    std::ostringstream line;
    line << r.name << ": " << r.checks_run << " checks, " << r.failures.size() << " failures";
    if (r.skipped_flagged) line << ", " << r.skipped_flagged << " flagged skipped";
    out.summary.push_back(line.str());
    out.detail.push_back(to_json(r));
  }
  return out;
}

SuiteOutcome duality_suite(int max_m) {
  std::vector<ConsistencyReport> reports;
  for (int m = 1; m <= max_m; ++m) {
    reports.push_back(check_duality(default_lattice(m)));
    reports.back().name += " m=" + std::to_string(m);
  }
  return from_reports("duality", reports);
}

SuiteOutcome omega_gamma_suite(int max_m) {
  std::vector<ConsistencyReport> reports;
  for (int m = 1; m <= max_m; ++m) {
    reports.push_back(check_omega_gamma(default_lattice(m)));
    reports.back().name += " m=" + std::to_string(m);
  }
  return from_reports("omega-gamma", reports);
}

SuiteOutcome regions_suite() {
  return from_reports("regions", {check_single_block(default_lattice(1)), check_known_regions(default_lattice(2))});
}

SuiteOutcome dilation_suite() {
  SuiteOutcome out{"dilation", true, {}, nlohmann::json::array()};
  double worst = 0;
  for (const auto& c : default_dilation_cases()) {
    const double err = dilation_check(dilation_function(c.function, c.rank), c.lambda.get_d(), c.a);
    worst = std::max(worst, err);
    const bool ok = err < 1e-8;
    out.passed = out.passed && ok;
    out.detail.push_back({{"function", c.function},
                          {"rank", c.rank},
                          {"lambda", to_string(c.lambda)},
                          {"a", c.a},
                          {"max_relative_error", err},
                          {"passed", ok}});
  }
  out.summary.push_back(std::to_string(out.detail.size()) + " cases, max relative error " + format_real(worst));
  return out;
}

SuiteOutcome drift_suite() {
  SuiteOutcome out{"drift", true, {}, nlohmann::json::array()};
  out.summary.push_back("case,expected_slope,fitted_slope,ok");
  for (const auto& c : default_drift_cases()) {
    auto result = drift_estimate(sample(c.f, c.axes), c.spec);
    const bool ok = drift_within_tolerance(result);
    out.passed = out.passed && ok;
    out.summary.push_back(c.label + "," + format_real(*result.expected_slope) + "," +
                          format_real(*result.fitted_slope) + "," + (ok ? "yes" : "no"));
    auto j = to_json(result);
    j["label"] = c.label;
    j["passed"] = ok;
    out.detail.push_back(j);
  }
  return out;
}

SuiteOutcome blowup_suite() {
  SuiteOutcome out{"blowup", true, {}, nlohmann::json::object()};
  const std::vector<std::size_t> cells{64, 128, 256, 512};
  auto endpoint = blowup_probe(endpoint_probe_case(), cells);
  auto bounded = blowup_probe(bounded_probe_case(), cells);
  const bool grows = grows_without_bound(endpoint, 0.05);

  // Bounded case: relative increments must shrink from one doubling to the next.
  std::vector<double> steps;
  for (std::size_t i = 1; i < bounded.samples.size(); ++i)
    steps.push_back(bounded.samples[i].second / bounded.samples[i - 1].second - 1);
  bool settles = true;
  for (std::size_t i = 1; i < steps.size(); ++i) settles = settles && steps[i] < steps[i - 1];

  out.passed = grows && settles;
  auto line = [](const ExperimentResult& r) {
    std::string s;
    for (const auto& [n, v] : r.samples) s += (s.empty() ? "" : " ") + format_real(v);
    return s;
  };
  out.summary.push_back("endpoint ratios: " + line(endpoint) + (grows ? " (growth confirmed)" : " (NO GROWTH)"));
  out.summary.push_back("bounded ratios: " + line(bounded) + ", last change " + format_real(steps.back()) +
                        (settles ? " (increments shrinking)" : " (NOT SETTLING)"));
  out.detail = {{"endpoint", to_json(endpoint)},
                {"bounded", to_json(bounded)},
                {"endpoint_grows", grows},
                {"bounded_increments_shrink", settles},
                {"bounded_last_relative_change", round12(steps.back())}};
  return out;
}

SuiteOutcome kfun_oracle_suite() {
  SuiteOutcome out{"kfun-oracle", true, {}, nlohmann::json::object()};
  const Couple l1_linf{Exponent(1), Exponent::infinity()};
  const auto family = random_simple_family(2024, 100);
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> logt(-4, 4);
  double worst = 0;
  std::size_t concavity_failures = 0, growth_failures = 0;
  for (const auto& f : family) {
    std::vector<double> ts(10);
    for (auto& t : ts) t = std::exp(logt(rng));
    std::sort(ts.begin(), ts.end());
    std::vector<double> ks;
    for (double t : ts) {
      const double k = k_functional(f, t, l1_linf);
      const double want = f.rearrangement_integral(t);
      worst = std::max(worst, std::abs(k - want) / want);
      ks.push_back(k);
    }
    for (std::size_t i = 0; i + 2 < ts.size(); ++i) {
      const double w = (ts[i + 1] - ts[i]) / (ts[i + 2] - ts[i]);
      if (ks[i + 1] < ((1 - w) * ks[i] + w * ks[i + 2]) * (1 - 1e-6)) ++concavity_failures;
    }
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
      if (!k_growth_check(f, l1_linf, ts[i], ts[i + 1])) ++growth_failures;
      if (!k_growth_check(f, l1_linf, ts[i + 1], ts[i])) ++growth_failures;
    }
  }
  const bool oracle_ok = worst <= 1e-6;
  out.summary.push_back("rearrangement oracle: max relative error " + format_real(worst));
  out.summary.push_back("concavity failures " + std::to_string(concavity_failures) + ", growth failures " +
                        std::to_string(growth_failures));

  nlohmann::json brackets = nlohmann::json::array();
  bool brackets_ok = true;
  for (const auto& c : default_interpolation_cases()) {
    const Exponent p = interpolated_exponent(c);
    double lo = INFINITY, hi = 0;
    for (const auto& f : family) {
      const double r = theta_norm(f, c.couple, c.theta, c.q) / lorentz_norm(f, p, c.q);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    const bool ok = hi / lo <= 50;
    brackets_ok = brackets_ok && ok;
    const std::string label = "(" + c.couple.u.str() + "," + c.couple.v.str() + "," + to_string(c.theta) + "," +
                              c.q.str() + ")";
    out.summary.push_back("bracket " + label + ": [" + format_real(lo) + ", " + format_real(hi) + "], range " +
                          format_real(hi / lo));
    brackets.push_back({{"case", label}, {"min", round12(lo)}, {"max", round12(hi)}, {"passed", ok}});
  }
  out.passed = oracle_ok && concavity_failures == 0 && growth_failures == 0 && brackets_ok;
  out.detail = {{"max_relative_error", worst},
                {"concavity_failures", concavity_failures},
                {"growth_failures", growth_failures},
                {"brackets", brackets}};
  return out;
}

}  // namespace

std::string format_real(double x) {
  std::ostringstream out;
  out << std::setprecision(12) << (x == 0 ? 0.0 : x);
  return out.str();
}

std::vector<DilationCase> default_dilation_cases() {
  std::vector<DilationCase> cases;
  for (std::size_t rank : {1u, 2u}) {
    std::vector<Rational> lambdas{Rational(1, 2), Rational(3, 4)};
    if (rank == 2) lambdas.emplace_back(3, 2);
    for (const char* fn : {"gaussian", "box", "power_tail"})
      for (const auto& lambda : lambdas)
        for (double a : {0.5, 2.0, 4.0}) cases.push_back({fn, rank, lambda, a});
  }
  return cases;
}

GridFunction dilation_function(const std::string& name, std::size_t rank, std::size_t cells) {
  if (name == "gaussian")
    return sample(GaussianProduct{std::vector<double>(rank, 0.0), std::vector<double>(rank, 1.0)},
                  cube(rank, -4, 4, cells));
  if (name == "box")
    return sample(Box{std::vector<double>(rank, -1.0), std::vector<double>(rank, 0.5)}, cube(rank, -2, 2, cells));
  if (name == "power_tail") return sample(PowerTail{1.5, 0}, cube(rank, -4, 4, cells));
  throw input_error("unknown test function '" + name + "'");
}

std::vector<DriftCase> default_drift_cases() {
  const GaussianProduct g1{{0.0}, {1.0}}, g2{{0.0, 0.0}, {1.0, 1.0}};
  return {
      {"m1 p=2 q=4 lambda=3/4", unit_spec({"2"}, {"4"}, "3/4"), g1, cube(1, -4, 4, 128)},
      {"m1 p=2 q=4 lambda=1/2", unit_spec({"2"}, {"4"}, "1/2"), g1, cube(1, -4, 4, 128)},
      {"m1 p=3/2 q=3 lambda=2/3", unit_spec({"3/2"}, {"3"}, "2/3"), Box{{-1.0}, {0.5}}, cube(1, -2, 2, 128)},
      {"m2 p=(2,2) q=(4,4) lambda=3/2", unit_spec({"2", "2"}, {"4", "4"}, "3/2"), g2, cube(2, -4, 4, 64)},
      {"m2 p=(2,2) q=(4,4) lambda=1", unit_spec({"2", "2"}, {"4", "4"}, "1"), Box{{-1.0, -1.0}, {0.5, 0.5}},
       cube(2, -2, 2, 64)},
      {"m2 p=(3/2,2) q=(3,inf) lambda=3/2", unit_spec({"3/2", "2"}, {"3", "inf"}, "3/2"), PowerTail{1.5, 0},
       cube(2, -4, 4, 64)},
  };
}

bool drift_within_tolerance(const ExperimentResult& result) {
  if (!result.fitted_slope || !result.expected_slope) return false;
  const double got = std::abs(*result.fitted_slope), want = std::abs(*result.expected_slope);
  if (want == 0) return got <= 0.02;
  return std::abs(got - want) <= 0.05 * want;
}

std::vector<SimpleFunction> random_simple_family(std::uint64_t seed, std::size_t count, int max_pieces) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pieces(1, max_pieces);
  std::uniform_real_distribution<double> value(0.1, 10.0), measure(0.05, 3.0);
  std::vector<SimpleFunction> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<SimpleFunction::Piece> ps(static_cast<std::size_t>(pieces(rng)));
    for (auto& p : ps) p = {value(rng), measure(rng)};
    out.emplace_back(std::move(ps));
  }
  return out;
}

std::vector<InterpolationCase> default_interpolation_cases() {
  return {{{Exponent(1), Exponent::infinity()}, Rational(1, 2), Exponent(2)},
          {{Exponent(1), Exponent(3)}, Rational(1, 3), Exponent(1)},
          {{Exponent(2), Exponent(4)}, Rational(1, 2), Exponent::infinity()}};
}

Exponent interpolated_exponent(const InterpolationCase& c) {
  return Exponent::from_reciprocal((1 - c.theta) * c.couple.u.reciprocal() + c.theta * c.couple.v.reciprocal());
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"duality", "omega-gamma", "regions", "dilation",
                                              "drift",   "blowup",      "kfun-oracle"};
  return names;
}

SuiteOutcome run_suite(std::string_view name, const SuiteOptions& options) {
  if (options.max_m < 1 || options.max_m > 4) throw input_error("max-m must be between 1 and 4");
  if (name == "duality") return duality_suite(options.max_m);
  if (name == "omega-gamma") return omega_gamma_suite(options.max_m);
  if (name == "regions") return regions_suite();
  if (name == "dilation") return dilation_suite();
  if (name == "drift") return drift_suite();
  if (name == "blowup") return blowup_suite();
  if (name == "kfun-oracle") return kfun_oracle_suite();
  throw input_error("unknown suite '" + std::string(name) + "'");
}

}  // namespace hlskit
