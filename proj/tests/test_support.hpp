#pragma once

#include <random>
#include <string>
#include <vector>

#include "hlskit/index_spec.hpp"

namespace hlskit::test {

inline Exponent E(const char* token) { return Exponent::parse(token); }

inline std::vector<Exponent> Ev(std::initializer_list<const char*> tokens) {
  std::vector<Exponent> out;
  for (auto t : tokens) out.push_back(Exponent::parse(t));
  return out;
}

inline Rational R(const char* token) { return parse_rational(token); }

inline IndexSpec spec(std::vector<int> dims, std::initializer_list<const char*> p,
                      std::initializer_list<const char*> q, const char* lambda = nullptr) {
  IndexSpec s{std::move(dims), Ev(p), Ev(q), std::nullopt};
  if (lambda) s.lambda = R(lambda);
  return s;
}

/// Random rational a/b with 1 <= b <= max_den and a/b in [lo, hi].
inline Rational random_rational(std::mt19937_64& rng, long lo, long hi, long max_den = 12) {
  std::uniform_int_distribution<long> den(1, max_den);
  long b = den(rng);
  std::uniform_int_distribution<long> num(lo * b, hi * b);
  Rational r(num(rng), b);
  r.canonicalize();
  return r;
}

/// Random exponent >= 1 whose reciprocal is a lattice rational in [0, 1].
inline Exponent random_exponent_ge1(std::mt19937_64& rng) {
  Rational r = random_rational(rng, 0, 1);
  return Exponent::from_reciprocal(r);
}

}  // namespace hlskit::test
