#include "hlskit/kfunctional.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <sstream>
#include <string>

#include "hlskit/errors.hpp"
#include "hlskit/parallel.hpp"

namespace hlskit {

// ---------------------------------------------------------------------------
// SimpleFunction

SimpleFunction::SimpleFunction(std::vector<Piece> pieces) {
  std::map<double, double, std::greater<>> merged;
  for (const auto& piece : pieces) {
    if (!(piece.value > 0) || !std::isfinite(piece.value))
      throw input_error("simple function values must be positive and finite");
    if (!(piece.measure > 0) || !std::isfinite(piece.measure))
      throw input_error("simple function measures must be positive and finite");
    merged[piece.value] += piece.measure;
  }
  if (merged.empty()) throw input_error("simple function needs at least one piece");
  for (const auto& [value, measure] : merged) pieces_.push_back({value, measure});
}

SimpleFunction SimpleFunction::parse(std::istream& in) {
  std::vector<Piece> pieces;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream row(line);
    Piece piece{};
    char comma = 0;
    std::string rest;
    if (!(row >> piece.value >> comma >> piece.measure) || comma != ',' || (row >> rest))
      throw input_error("simple function line " + std::to_string(lineno) + ": expected 'value,measure'");
    pieces.push_back(piece);
  }
  return SimpleFunction(std::move(pieces));
}

double SimpleFunction::total_measure() const noexcept {
  double s = 0;
  for (const auto& p : pieces_) s += p.measure;
  return s;
}

SimpleFunction SimpleFunction::truncated(double cap) const {
  if (!(cap > 0)) throw input_error("truncation level must be positive");
  std::vector<Piece> out;
  for (const auto& p : pieces_) out.push_back({std::min(p.value, cap), p.measure});
  return SimpleFunction(std::move(out));
}

SimpleFunction SimpleFunction::scaled(double c) const {
  if (!(c > 0) || !std::isfinite(c)) throw input_error("scale factor must be positive");
  std::vector<Piece> out;
  for (const auto& p : pieces_) out.push_back({c * p.value, p.measure});
  return SimpleFunction(std::move(out));
}

double SimpleFunction::norm(double p) const {
  if (std::isinf(p)) return max_value();
  double s = 0;
  for (const auto& piece : pieces_) s += std::pow(piece.value, p) * piece.measure;
  return std::pow(s, 1 / p);
}

double SimpleFunction::rearrangement_integral(double t) const {
  double acc = 0, start = 0;
  for (const auto& piece : pieces_) {
    if (t <= start) break;
    acc += piece.value * std::min(piece.measure, t - start);
    start += piece.measure;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// K-functional

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kGolden = 0.6180339887498949;

struct Objective {
  const SimpleFunction& f;
  double t;
  double u;
  double v;

  static double lp(const std::vector<double>& x, const std::vector<SimpleFunction::Piece>& pieces, double p) {
    if (std::isinf(p)) {
      double m = 0;
      for (double xi : x) m = std::max(m, xi);
      return m;
    }
    double s = 0;
    for (std::size_t j = 0; j < x.size(); ++j)
      if (x[j] > 0) s += std::pow(x[j], p) * pieces[j].measure;
    return std::pow(s, 1 / p);
  }

  // a_j = c_j f_j, b_j = f_j - a_j
  double split(const std::vector<double>& a, const std::vector<double>& b) const {
    return lp(a, f.pieces(), u) + t * lp(b, f.pieces(), v);
  }

  double coefficients(const std::vector<double>& c) const {
    std::vector<double> a(c.size()), b(c.size());
    for (std::size_t j = 0; j < c.size(); ++j) {
      a[j] = c[j] * f.pieces()[j].value;
      b[j] = (1 - c[j]) * f.pieces()[j].value;
    }
    return split(a, b);
  }

  // b = min(f, gamma) if cap_second, else a = min(f, gamma)
  double threshold(double gamma, bool cap_second) const {
    const auto& ps = f.pieces();
    std::vector<double> lo(ps.size()), hi(ps.size());
    for (std::size_t j = 0; j < ps.size(); ++j) {
      lo[j] = std::min(ps[j].value, gamma);
      hi[j] = std::max(ps[j].value - gamma, 0.0);
    }
    return cap_second ? split(hi, lo) : split(lo, hi);
  }

  double endpoints() const { return std::min(f.norm(u), t * f.norm(v)); }
};

template <typename F>
double golden_min(F&& fn, double lo, double hi, int iterations = 120) {
  double x1 = hi - kGolden * (hi - lo), x2 = lo + kGolden * (hi - lo);
  double f1 = fn(x1), f2 = fn(x2);
  for (int i = 0; i < iterations && hi - lo > 0; ++i) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kGolden * (hi - lo);
      f1 = fn(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kGolden * (hi - lo);
      f2 = fn(x2);
    }
  }
  return std::min({f1, f2, fn(lo), fn(hi)});
}

// Threshold family: unimodal in gamma, smooth between the breakpoints
// {0} U {f_j}. The minimum lies next to the best breakpoint.
double minimize_threshold(const Objective& obj, bool cap_second) {
  std::vector<double> bp{0.0};
  for (auto it = obj.f.pieces().rbegin(); it != obj.f.pieces().rend(); ++it) bp.push_back(it->value);
  std::vector<double> val(bp.size());
  std::size_t best = 0;
  for (std::size_t i = 0; i < bp.size(); ++i) {
    val[i] = obj.threshold(bp[i], cap_second);
    if (val[i] < val[best]) best = i;
  }
  double result = val[best];
  auto fn = [&](double g) { return obj.threshold(g, cap_second); };
  if (best > 0) result = std::min(result, golden_min(fn, bp[best - 1], bp[best]));
  if (best + 1 < bp.size()) result = std::min(result, golden_min(fn, bp[best], bp[best + 1]));
  return result;
}

double softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }
double sigmoid(double z) { return z >= 0 ? 1 / (1 + std::exp(-z)) : std::exp(z) / (1 + std::exp(z)); }

// Solves (v-1) softplus(z) - (u-1) softplus(-z) = target; a/f = sigmoid(z).
double solve_logit(double target, double u, double v) {
  auto g = [&](double z) { return (v - 1) * softplus(z) - (u - 1) * softplus(-z) - target; };
  double lo = std::min(target / (u - 1), target / (v - 1)) - 1;
  double hi = std::max(target / (u - 1), target / (v - 1)) + 1;
  while (g(lo) > 0) lo = 2 * lo - 1;
  while (g(hi) < 0) hi = 2 * hi + 1;
  double z = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double gz = g(z);
    if (gz == 0) return z;
    (gz < 0 ? lo : hi) = z;
    const double slope = (v - 1) * sigmoid(z) + (u - 1) * sigmoid(-z);
    double next = z - gz / slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - z) <= 1e-15 * std::max(1.0, std::abs(z))) return next;
    z = next;
  }
  return z;
}

double log_sum_exp(const std::vector<double>& x) {
  double m = -kInf;
  for (double xi : x) m = std::max(m, xi);
  if (!std::isfinite(m)) return m;
  double s = 0;
  for (double xi : x) s += std::exp(xi - m);
  return m + std::log(s);
}

// Power family for 1 < u, v < inf: a_j^(u-1) = kappa b_j^(v-1).
class PowerFamily {
 public:
  explicit PowerFamily(const Objective& obj) : obj_(obj) {
    for (const auto& p : obj.f.pieces()) {
      log_value_.push_back(std::log(p.value));
      log_measure_.push_back(std::log(p.measure));
    }
  }

  // sign of dF/dkappa at log kappa = s equals the sign of the result
  double derivative_sign(double s) const {
    const double u = obj_.u, v = obj_.v;
    std::vector<double> la(log_value_.size()), lb(log_value_.size());
    for (std::size_t j = 0; j < la.size(); ++j) {
      const double z = solve_logit(s + (v - u) * log_value_[j], u, v);
      la[j] = u * (log_value_[j] - softplus(-z)) + log_measure_[j];
      lb[j] = v * (log_value_[j] - softplus(z)) + log_measure_[j];
    }
    const double log_a = log_sum_exp(la) / u;
    const double log_b = log_sum_exp(lb) / v;
    return s - (std::log(obj_.t) + (u - 1) * log_a - (v - 1) * log_b);
  }

  double value(double s) const {
    const double u = obj_.u, v = obj_.v;
    const auto& ps = obj_.f.pieces();
    std::vector<double> a(ps.size()), b(ps.size());
    for (std::size_t j = 0; j < ps.size(); ++j) {
      const double z = solve_logit(s + (v - u) * log_value_[j], u, v);
      a[j] = ps[j].value * sigmoid(z);
      b[j] = ps[j].value * sigmoid(-z);
    }
    return obj_.split(a, b);
  }

  double minimize() const {
    double best = obj_.endpoints();
    double lo = -50, hi = 50;
    while (derivative_sign(lo) >= 0 && lo > -1e4) lo *= 2;
    while (derivative_sign(hi) <= 0 && hi < 1e4) hi *= 2;
    if (derivative_sign(lo) >= 0 || derivative_sign(hi) <= 0) return best;
    for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, std::abs(lo)); ++it) {
      const double mid = 0.5 * (lo + hi);
      (derivative_sign(mid) < 0 ? lo : hi) = mid;
    }
    return std::min({best, value(lo), value(hi)});
  }

 private:
  const Objective& obj_;
  std::vector<double> log_value_;
  std::vector<double> log_measure_;
};

// Non-convex couples: family candidates, then coordinate-wise grid search.
double minimize_nonconvex(const Objective& obj) {
  const std::size_t J = obj.f.pieces().size();
  double best = obj.endpoints();
  std::vector<double> best_c(J, 0.0);
  if (obj.f.norm(obj.u) <= obj.t * obj.f.norm(obj.v)) best_c.assign(J, 1.0);

  // coarse scan of both threshold families
  for (bool cap_second : {true, false}) {
    const int steps = 400;
    for (int i = 0; i <= steps; ++i) {
      const double gamma = obj.f.max_value() * i / steps;
      const double val = obj.threshold(gamma, cap_second);
      if (val < best) {
        best = val;
        for (std::size_t j = 0; j < J; ++j) {
          const double fj = obj.f.pieces()[j].value;
          const double low = std::min(fj, gamma) / fj;
          best_c[j] = cap_second ? 1 - low : low;
        }
      }
    }
  }

  const int grid = 64;
  std::vector<double> c = best_c;
  for (int sweep = 0; sweep < 100; ++sweep) {
    const double before = best;
    for (std::size_t j = 0; j < J; ++j) {
      auto along = [&](double x) {
        const double keep = c[j];
        c[j] = x;
        const double val = obj.coefficients(c);
        c[j] = keep;
        return val;
      };
      double arg = c[j], val = along(c[j]);
      for (int i = 0; i <= grid; ++i) {
        const double x = static_cast<double>(i) / grid;
        const double fx = along(x);
        if (fx < val) val = fx, arg = x;
      }
      const double lo = std::max(0.0, arg - 1.0 / grid), hi = std::min(1.0, arg + 1.0 / grid);
      double x1 = hi - kGolden * (hi - lo), x2 = lo + kGolden * (hi - lo);
      double a = lo, b = hi;
      for (int it = 0; it < 80; ++it) {
        if (along(x1) <= along(x2)) {
          b = x2;
        } else {
          a = x1;
        }
        x1 = b - kGolden * (b - a);
        x2 = a + kGolden * (b - a);
      }
      const double mid = 0.5 * (a + b);
      if (along(mid) < val) val = along(mid), arg = mid;
      c[j] = arg;
      best = std::min(best, val);
    }
    if (before - best <= 1e-12 * best) break;
  }
  return best;
}

void check_couple(const Couple& couple) {
  if (!(couple.u > 0) || !(couple.v > 0)) throw input_error("couple exponents must be positive");
}

}  // namespace

double k_functional(const SimpleFunction& f, double t, const Couple& couple) {
  if (!(t > 0) || !std::isfinite(t)) throw input_error("K-functional needs t > 0");
  check_couple(couple);
  const Objective obj{f, t, couple.u.to_double(), couple.v.to_double()};
  if (couple.u < 1 || couple.v < 1) return minimize_nonconvex(obj);
  if (couple.u == 1 || couple.v.is_infinite()) return std::min(obj.endpoints(), minimize_threshold(obj, true));
  if (couple.v == 1 || couple.u.is_infinite()) return std::min(obj.endpoints(), minimize_threshold(obj, false));
  return PowerFamily(obj).minimize();
}

double k_functional_grid_search(const SimpleFunction& f, double t, const Couple& couple, int steps) {
  if (steps < 1) throw input_error("grid search needs at least one step");
  check_couple(couple);
  const Objective obj{f, t, couple.u.to_double(), couple.v.to_double()};
  const std::size_t J = f.pieces().size();
  std::vector<int> idx(J, 0);
  std::vector<double> c(J, 0.0);
  double best = kInf;
  while (true) {
    for (std::size_t j = 0; j < J; ++j) c[j] = static_cast<double>(idx[j]) / steps;
    best = std::min(best, obj.coefficients(c));
    std::size_t j = 0;
    while (j < J && ++idx[j] > steps) idx[j++] = 0;
    if (j == J) break;
  }
  return best;
}

double theta_norm(const SimpleFunction& f, const Couple& couple, const Rational& theta, const Exponent& q) {
  if (sgn(theta) <= 0 || theta >= 1) throw input_error("theta must lie in (0, 1)");
  check_couple(couple);
  if (!(q > 0)) throw input_error("q must be positive");
  const double th = theta.get_d();
  const double qd = q.to_double();
  const double norm_u = f.norm(couple.u.to_double());
  const double norm_v = f.norm(couple.v.to_double());

  std::map<int, double> terms;
  auto fill = [&](int lo, int hi) {
    std::vector<double> vals(static_cast<std::size_t>(hi - lo + 1));
    const int count = hi - lo + 1;
#pragma omp parallel for schedule(dynamic) num_threads(worker_count())
    for (int i = 0; i < count; ++i) {
      const int n = lo + i;
      vals[static_cast<std::size_t>(i)] = std::exp2(-n * th) * k_functional(f, std::exp2(n), couple);
    }
    for (int i = 0; i < count; ++i) terms[lo + i] = vals[static_cast<std::size_t>(i)];
  };

  int N = 40;
  fill(-N, N);
  while (true) {
    const double tail_hi = norm_u * std::exp2(-(N + 1) * th);
    const double tail_lo = norm_v * std::exp2(-(N + 1) * (1 - th));
    if (std::isinf(qd)) {
      double s = 0;
      for (const auto& [n, x] : terms) s = std::max(s, x);
      if (std::max(tail_hi, tail_lo) <= s || N > 4000) return s;
    } else {
      double s = 0;
      for (const auto& [n, x] : terms) s += std::pow(x, qd);
      const double tails = std::pow(tail_hi, qd) / (1 - std::exp2(-th * qd)) +
                           std::pow(tail_lo, qd) / (1 - std::exp2(-(1 - th) * qd));
      const double norm = std::pow(s, 1 / qd);
      if (std::pow(s + tails, 1 / qd) <= (1 + 1e-8) * norm || N > 4000) return norm;
    }
    fill(N + 1, N + 20);
    fill(-N - 20, -N - 1);
    N += 20;
  }
}

double lorentz_norm(const SimpleFunction& f, const Exponent& p, const Exponent& q) {
  if (p.is_infinite()) throw input_error("Lorentz norm with p = inf is not supported");
  const double pd = p.to_double(), qd = q.to_double();
  double start = 0, acc = 0;
  for (const auto& piece : f.pieces()) {
    const double end = start + piece.measure;
    if (std::isinf(qd)) {
      acc = std::max(acc, std::pow(end, 1 / pd) * piece.value);
    } else {
      acc += std::pow(piece.value, qd) * (pd / qd) * (std::pow(end, qd / pd) - std::pow(start, qd / pd));
    }
    start = end;
  }
  return std::isinf(qd) ? acc : std::pow(acc, 1 / qd);
}

bool k_growth_check(const SimpleFunction& f, const Couple& couple, double s, double t) {
  if (!(s > 0) || !(t > 0)) throw input_error("growth check needs s, t > 0");
  const double kt = k_functional(f, t, couple);
  const double ks = k_functional(f, s, couple);
  const double bound = std::max(1.0, t / s) * ks;
  return kt <= bound + 1e-9 * std::max(1.0, bound);
}

std::vector<std::pair<double, double>> k_curve(const SimpleFunction& f, const Couple& couple, double t_min,
                                                double t_max, std::size_t points) {
  if (!(t_min > 0) || !(t_max > t_min) || points < 2) throw input_error("need 0 < t_min < t_max and >= 2 points");
  std::vector<std::pair<double, double>> out;
  const double lmin = std::log(t_min), lmax = std::log(t_max);
  for (std::size_t i = 0; i < points; ++i) {
    const double t = std::exp(lmin + (lmax - lmin) * static_cast<double>(i) / static_cast<double>(points - 1));
    out.emplace_back(t, k_functional(f, t, couple));
  }
  return out;
}

}  // namespace hlskit
