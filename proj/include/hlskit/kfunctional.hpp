#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "hlskit/exponent.hpp"

namespace hlskit {

/// Nonnegative simple function sum_j value_j chi_{E_j}, stored as
/// (value, measure) pieces with strictly decreasing values. The stored
/// order is already the decreasing rearrangement f*.
class SimpleFunction {
 public:
  struct Piece {
    double value;
    double measure;
  };

  /// Merges equal values and sorts descending. Throws input_error unless
  /// every value and measure is finite and positive.
  explicit SimpleFunction(std::vector<Piece> pieces);

  /// Lines "value,measure"; blank lines and '#' comments are skipped.
  static SimpleFunction parse(std::istream& in);

  const std::vector<Piece>& pieces() const noexcept { return pieces_; }
  double total_measure() const noexcept;
  double max_value() const noexcept { return pieces_.empty() ? 0.0 : pieces_.front().value; }

  /// Values truncated at `cap` (min(f, cap)), cap > 0.
  SimpleFunction truncated(double cap) const;
  SimpleFunction scaled(double c) const;

  /// L^p (quasi-)norm, p in (0, inf].
  double norm(double p) const;

  /// integral_0^t f*(s) ds.
  double rearrangement_integral(double t) const;

 private:
  std::vector<Piece> pieces_;
};

/// The couple (L^u, L^v), u, v in (0, inf].
struct Couple {
  Exponent u;
  Exponent v;
};

/// K(t, f; L^u, L^v): the minimum over c in [0, 1]^J of
///   ||c f||_u + t ||(1 - c) f||_v
/// with one coefficient per piece of f.
///
/// For u, v >= 1 the objective is convex and the optimum lies on a
/// one-parameter family: b = min(f, gamma) when u = 1 or v = inf,
/// a = min(f, gamma) when v = 1 or u = inf, and otherwise
/// a^(u-1) = kappa (f - a)^(v-1) piecewise. The family parameter is found by
/// bisection on the sign of the directional derivative (or golden section
/// between breakpoints for the threshold families).
///
/// For u < 1 or v < 1 the objective is not convex; the result is the best
/// of the threshold families refined by coordinate-wise grid search, an
/// upper bound on K.
double k_functional(const SimpleFunction& f, double t, const Couple& couple);

/// Dyadic (theta, q) norm: the l^q norm of 2^(-n theta) K(2^n) over
/// n in [-N, N]. N starts at 40 and grows until the omitted tails,
/// bounded via K(t) <= ||f||_u and K(t) <= t ||f||_v, are below 1e-8
/// relative.
double theta_norm(const SimpleFunction& f, const Couple& couple, const Rational& theta, const Exponent& q);

/// Lorentz (quasi-)norm (int_0^inf (s^(1/p) f*(s))^q ds/s)^(1/q), sup form
/// for q = inf, evaluated in closed form on the step function f*.
/// Throws input_error for p = inf.
double lorentz_norm(const SimpleFunction& f, const Exponent& p, const Exponent& q);

/// K(t) <= max(1, t/s) K(s) up to 1e-9 relative slack.
bool k_growth_check(const SimpleFunction& f, const Couple& couple, double s, double t);

/// Exhaustive search over c in {0, 1/steps, ..., 1}^J. Exponential in J;
/// test oracle for small J.
double k_functional_grid_search(const SimpleFunction& f, double t, const Couple& couple, int steps);

/// Log-spaced (t, K(t)) pairs over [t_min, t_max].
std::vector<std::pair<double, double>> k_curve(const SimpleFunction& f, const Couple& couple, double t_min,
                                                double t_max, std::size_t points);

}  // namespace hlskit
