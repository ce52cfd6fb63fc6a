#pragma once

#include <compare>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace hlskit {

using Rational = mpq_class;

/// Parse an exact rational: optional sign, decimal integer, optional "/den".
Rational parse_rational(std::string_view token);

/// "a/b" or "a" for integers.
std::string to_string(const Rational& r);

/// An extended positive rational in (0, inf].
///
/// Finite values are kept as canonical GMP rationals so that equalities such
/// as p_i = q_i or the homogeneity balance are decided exactly.
class Exponent {
 public:
  /// Finite exponent; throws input_error unless value > 0.
  explicit Exponent(Rational value);
  Exponent(long num, long den = 1);

  static Exponent infinity() { return Exponent{}; }

  /// 1/r with r >= 0; r == 0 maps to inf.
  static Exponent from_reciprocal(const Rational& r);

  /// Parses "inf", "a" or "a/b".
  static Exponent parse(std::string_view token);

  bool is_infinite() const noexcept { return infinite_; }
  bool is_finite() const noexcept { return !infinite_; }

  /// Finite value; throws domain_error for inf.
  const Rational& value() const;

  /// 1/p, exact; 0 for inf.
  Rational reciprocal() const;

  double to_double() const noexcept;
  std::string str() const;

  friend bool operator==(const Exponent& a, const Exponent& b) noexcept;
  friend std::strong_ordering operator<=>(const Exponent& a, const Exponent& b) noexcept;

  friend bool operator==(const Exponent& a, long b) noexcept { return a == Exponent::raw(b); }
  friend std::strong_ordering operator<=>(const Exponent& a, long b) noexcept {
    return a <=> Exponent::raw(b);
  }

 private:
  Exponent() : infinite_(true) {}
  static Exponent raw(long v);

  bool infinite_ = false;
  Rational value_{};
};

/// p' with 1/p + 1/p' = 1. Requires p >= 1.
Exponent conjugate(const Exponent& p);

}  // namespace hlskit
