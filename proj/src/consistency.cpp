#include "hlskit/consistency.hpp"

#include <algorithm>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hlskit/errors.hpp"
#include "hlskit/gamma.hpp"
#include "hlskit/omega.hpp"
#include "hlskit/parallel.hpp"

namespace hlskit {

void LatticeSpec::validate() const {
  if (dims.empty()) throw input_error("lattice needs at least one block");
  for (int n : dims)
    if (n <= 0) throw input_error("block dimensions must be positive");
  if (reciprocal_grid.empty()) throw input_error("empty reciprocal grid");
  for (const auto& r : reciprocal_grid)
    if (sgn(r) < 0 || r > 1) throw input_error("grid reciprocal outside [0, 1]: " + to_string(r));
  if (lambda_rule == LambdaRule::Explicit && lambdas.empty())
    throw input_error("explicit lambda rule needs at least one lambda");
  if (!fixed.empty() && fixed.size() != 2 * dims.size())
    throw input_error("fixed assignments must cover 2m slots");
  for (const auto& f : fixed)
    if (f && (sgn(*f) < 0 || *f > 1)) throw input_error("fixed reciprocal outside [0, 1]");
}

namespace {

bool slot_fixed(const LatticeSpec& lattice, std::size_t slot) {
  return !lattice.fixed.empty() && lattice.fixed[slot].has_value();
}

std::size_t lambda_count(const LatticeSpec& lattice) {
  return lattice.lambda_rule == LambdaRule::Explicit ? lattice.lambdas.size() : 1;
}

}  // namespace

std::size_t LatticeSpec::size() const {
  validate();
  std::size_t n = lambda_count(*this);
  for (std::size_t slot = 0; slot < 2 * dims.size(); ++slot)
    if (!slot_fixed(*this, slot)) n *= reciprocal_grid.size();
  return n;
}

LatticeSpec default_lattice(int m) {
  if (m < 1) throw input_error("lattice needs m >= 1");
  LatticeSpec lattice;
  lattice.dims.assign(static_cast<std::size_t>(m), 1);
  for (auto [a, b] : {std::pair{0, 1}, {1, 6}, {1, 4}, {1, 3}, {1, 2}, {2, 3}, {3, 4}, {5, 6}, {1, 1}}) {
    Rational r(a, b);
    r.canonicalize();
    lattice.reciprocal_grid.push_back(r);
  }
  return lattice;
}

LatticePoint lattice_point(const LatticeSpec& lattice, std::size_t index) {
  const std::size_t m = lattice.dims.size();
  const std::size_t g = lattice.reciprocal_grid.size();
  LatticePoint point;
  point.index = index;

  std::size_t rest = index;
  const std::size_t nl = lambda_count(lattice);
  const std::size_t lambda_idx = rest % nl;
  rest /= nl;

  std::vector<Rational> recip(2 * m);
  for (std::size_t slot = 2 * m; slot-- > 0;) {
    if (slot_fixed(lattice, slot)) {
      recip[slot] = *lattice.fixed[slot];
    } else {
      recip[slot] = lattice.reciprocal_grid[rest % g];
      rest /= g;
    }
  }
  if (rest != 0) throw input_error("lattice index out of range");

  IndexSpec& spec = point.spec;
  spec.dims = lattice.dims;
  spec.p.reserve(m);
  spec.q.reserve(m);
  for (std::size_t i = 0; i < m; ++i) spec.p.push_back(Exponent::from_reciprocal(recip[i]));
  for (std::size_t i = 0; i < m; ++i) spec.q.push_back(Exponent::from_reciprocal(recip[m + i]));
  spec.lambda = lattice.lambda_rule == LambdaRule::Explicit ? lattice.lambdas[lambda_idx]
                                                            : solve_lambda(spec.dims, spec.p, spec.q);
  point.flagged = sgn(*spec.lambda) <= 0 || *spec.lambda >= spec.total_dim();
  return point;
}

std::vector<LatticePoint> enumerate(const LatticeSpec& lattice) {
  const std::size_t n = lattice.size();
  std::vector<LatticePoint> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(lattice_point(lattice, i));
  return out;
}

void ConsistencyReport::merge(ConsistencyReport other) {
  checks_run += other.checks_run;
  skipped_flagged += other.skipped_flagged;
  failures.insert(failures.end(), std::make_move_iterator(other.failures.begin()),
                  std::make_move_iterator(other.failures.end()));
  std::stable_sort(failures.begin(), failures.end(),
                   [](const CheckFailure& a, const CheckFailure& b) { return a.index < b.index; });
}

nlohmann::json to_json(const ConsistencyReport& report) {
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& f : report.failures)
    failures.push_back({{"index", f.index}, {"check", f.check}, {"spec", f.spec},
                        {"expected", f.expected}, {"got", f.got}});
  return {{"name", report.name},
          {"checks_run", report.checks_run},
          {"skipped_flagged", report.skipped_flagged},
          {"passed", report.passed()},
          {"failures", failures}};
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

void write_failures_csv(const ConsistencyReport& report, std::ostream& out) {
  out << "index,check,spec,expected,got\n";
  for (const auto& f : report.failures)
    out << f.index << ',' << csv_field(f.check) << ',' << csv_field(f.spec) << ','
        << csv_field(f.expected) << ',' << csv_field(f.got) << '\n';
}

namespace {

using PointCheck = std::function<void(const LatticePoint&, ConsistencyReport&)>;

ConsistencyReport run_lattice(const std::string& name, const LatticeSpec& lattice, CheckOptions options,
                              const PointCheck& check) {
  const std::size_t n = lattice.size();
  ConsistencyReport total;
  total.name = name;
  if (!options.parallel) {
    for (std::size_t i = 0; i < n; ++i) check(lattice_point(lattice, i), total);
    return total;
  }

  std::vector<ConsistencyReport> partial(static_cast<std::size_t>(worker_count()));
  const auto count = static_cast<long long>(n);
#pragma omp parallel num_threads(static_cast<int>(partial.size()))
  {
#ifdef _OPENMP
    ConsistencyReport& local = partial[static_cast<std::size_t>(omp_get_thread_num())];
#else
    ConsistencyReport& local = partial[0];
#endif
#pragma omp for schedule(dynamic, 1024)
    for (long long i = 0; i < count; ++i) check(lattice_point(lattice, static_cast<std::size_t>(i)), local);
  }
  for (auto& r : partial) total.merge(std::move(r));
  return total;
}

std::string verdict(bool member) { return member ? "member" : "non-member"; }

void record(ConsistencyReport& report, std::size_t index, std::string check, const IndexSpec& spec,
            std::string expected, std::string got) {
  report.failures.push_back({index, std::move(check), spec.str(), std::move(expected), std::move(got)});
}

void duality_point(const LatticePoint& point, ConsistencyReport& report) {
  if (point.flagged) {
    ++report.skipped_flagged;
    return;
  }
  ++report.checks_run;
  const bool primal = gamma_member(point.spec).member;
  const bool dual_member = gamma_member(dual(point.spec)).member;
  if (primal != dual_member)
    record(report, point.index, "duality", point.spec, verdict(primal), verdict(dual_member));
}

void omega_gamma_point(const LatticePoint& point, ConsistencyReport& report) {
  ++report.checks_run;
  const bool direct = omega_member(point.spec).member;
  const bool reduced = omega_via_gamma(point.spec).member;
  if (direct != reduced) record(report, point.index, "omega-gamma", point.spec, verdict(direct), verdict(reduced));
}

void known_regions_point(const LatticePoint& point, ConsistencyReport& report) {
  const IndexSpec& s = point.spec;
  if (s.blocks() != 2) throw input_error("known-region checks need m = 2");
  if (point.flagged) {
    ++report.skipped_flagged;
    return;
  }
  const bool member = gamma_member(s).member;
  const auto& p = s.p;
  const auto& q = s.q;
  auto open_increasing = [](const Exponent& a, const Exponent& b) { return a > 1 && a < b && b.is_finite(); };
  auto ordered = [](const Exponent& a, const Exponent& b) { return a >= 1 && a <= b; };

  if (sgn(homogeneity_defect(s)) == 0) {
    auto require = [&](bool pattern, bool expected_member, const char* name) {
      if (!pattern) return;
      ++report.checks_run;
      if (member != expected_member)
        record(report, point.index, name, s, verdict(expected_member), verdict(member));
    };
    require(open_increasing(p[0], q[0]) && open_increasing(p[1], q[1]), true, "benedek-panzone");
    require(ordered(p[0], q[0]) && open_increasing(p[1], q[1]), true, "adams-bagby-1");
    require(open_increasing(p[0], q[0]) && p[1] > 1 && p[1] == q[1] && q[1].is_finite(), true,
            "adams-bagby-2");
    require(q[0].is_infinite() && p[1] == q[1], false, "counterexample-i");
    require(p[0] <= q[0] && q[0] < p[1] && p[1] <= q[1] && q[1].is_infinite(), false, "counterexample-ii");
  }
  for (std::size_t i = 0; i < 2; ++i) {
    if (!(member && p[i] > 1 && p[i].is_finite())) continue;
    ++report.checks_run;
    if (p[i] > q[i])
      record(report, point.index, "necessity-p-le-q", s, "p_" + std::to_string(i + 1) + " <= q_" + std::to_string(i + 1),
             "member with p > q");
  }
}

void single_block_point(const LatticePoint& point, ConsistencyReport& report) {
  const IndexSpec& s = point.spec;
  if (s.blocks() != 1) throw input_error("single-block check needs m = 1");
  ++report.checks_run;
  const bool member = gamma_member(s).member;
  const bool closed = single_block_bounded(s.dims[0], s.p[0], s.q[0], *s.lambda);
  if (member != closed) record(report, point.index, "single-block", s, verdict(closed), verdict(member));
}

ConsistencyReport single(const std::string& name, const IndexSpec& spec,
                         void (*fn)(const LatticePoint&, ConsistencyReport&)) {
  LatticePoint point{0, spec, false};
  if (spec.lambda) point.flagged = sgn(*spec.lambda) <= 0 || *spec.lambda >= spec.total_dim();
  ConsistencyReport report;
  report.name = name;
  fn(point, report);
  return report;
}

}  // namespace

ConsistencyReport check_duality(const LatticeSpec& lattice, CheckOptions options) {
  return run_lattice("duality", lattice, options, duality_point);
}

ConsistencyReport check_duality(const IndexSpec& spec) {
  if (!spec.lambda) throw input_error("duality check needs lambda");
  return single("duality", spec, duality_point);
}

ConsistencyReport check_omega_gamma(const LatticeSpec& lattice, CheckOptions options) {
  return run_lattice("omega-gamma", lattice, options, omega_gamma_point);
}

ConsistencyReport check_known_regions(const LatticeSpec& lattice, CheckOptions options) {
  if (lattice.dims.size() != 2) throw input_error("known-region checks need m = 2");
  return run_lattice("regions", lattice, options, known_regions_point);
}

ConsistencyReport check_known_regions(const IndexSpec& spec) {
  if (!spec.lambda) throw input_error("known-region check needs lambda");
  return single("regions", spec, known_regions_point);
}

ConsistencyReport check_single_block(const LatticeSpec& lattice, CheckOptions options) {
  if (lattice.dims.size() != 1) throw input_error("single-block check needs m = 1");
  return run_lattice("single-block", lattice, options, single_block_point);
}

}  // namespace hlskit
