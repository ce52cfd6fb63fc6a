#include "hlskit/exponent.hpp"

#include <cctype>
#include <limits>
#include <string>

#include "hlskit/errors.hpp"

namespace hlskit {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view token) {
  std::string_view body = token;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den))
    throw input_error("malformed rational '" + std::string(token) + "'");
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw input_error("zero denominator in '" + std::string(token) + "'");
  Rational r(n, d);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& r) { return r.get_str(10); }

Exponent::Exponent(Rational value) : value_(std::move(value)) {
  value_.canonicalize();
  if (sgn(value_) <= 0) throw input_error("exponent must be positive, got " + value_.get_str());
}

Exponent::Exponent(long num, long den) {
  if (den == 0) throw input_error("zero denominator");
  value_ = Rational(num, den);
  value_.canonicalize();
  if (sgn(value_) <= 0) throw input_error("exponent must be positive, got " + value_.get_str());
}

Exponent Exponent::raw(long v) {
  Exponent e;
  e.infinite_ = false;
  e.value_ = v;
  return e;
}

Exponent Exponent::from_reciprocal(const Rational& r) {
  if (sgn(r) < 0) throw input_error("reciprocal must be nonnegative, got " + r.get_str());
  if (sgn(r) == 0) return infinity();
  return Exponent(Rational(1 / r));
}

Exponent Exponent::parse(std::string_view token) {
  if (token == "inf" || token == "Inf" || token == "INF") return infinity();
  if (!token.empty() && (token.front() == '-' || token.front() == '+'))
    throw input_error("malformed exponent '" + std::string(token) + "'");
  Rational r;
  try {
    r = parse_rational(token);
  } catch (const input_error&) {
    throw input_error("malformed exponent '" + std::string(token) + "'");
  }
  if (sgn(r) <= 0) throw input_error("exponent must be positive: '" + std::string(token) + "'");
  return Exponent(std::move(r));
}

const Rational& Exponent::value() const {
  if (infinite_) throw domain_error("infinite exponent has no finite value");
  return value_;
}

Rational Exponent::reciprocal() const {
  if (infinite_) return Rational(0);
  return Rational(1 / value_);
}

double Exponent::to_double() const noexcept {
  return infinite_ ? std::numeric_limits<double>::infinity() : value_.get_d();
}

std::string Exponent::str() const { return infinite_ ? std::string("inf") : to_string(value_); }

bool operator==(const Exponent& a, const Exponent& b) noexcept {
  if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
  return a.value_ == b.value_;
}

std::strong_ordering operator<=>(const Exponent& a, const Exponent& b) noexcept {
  if (a.infinite_ && b.infinite_) return std::strong_ordering::equal;
  if (a.infinite_) return std::strong_ordering::greater;
  if (b.infinite_) return std::strong_ordering::less;
  int c = cmp(a.value_, b.value_);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

Exponent conjugate(const Exponent& p) {
  if (p < 1) throw domain_error("conjugate undefined below 1 (p = " + p.str() + ")");
  return Exponent::from_reciprocal(Rational(1 - p.reciprocal()));
}

}  // namespace hlskit
