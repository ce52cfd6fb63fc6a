#include "hlskit/index_spec.hpp"

#include <numeric>
#include <sstream>

#include "hlskit/errors.hpp"

namespace hlskit {

long IndexSpec::total_dim() const noexcept {
  return std::accumulate(dims.begin(), dims.end(), 0L);
}

void IndexSpec::validate() const {
  if (dims.empty()) throw input_error("index spec needs at least one block");
  if (p.size() != dims.size() || q.size() != dims.size())
    throw input_error("dims, p and q must have the same length");
  for (int n : dims)
    if (n <= 0) throw input_error("block dimensions must be positive");
}

namespace {

template <typename T, typename F>
std::string join(const std::vector<T>& v, F&& fmt) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += fmt(v[i]);
  }
  return out;
}

}  // namespace

std::string IndexSpec::str() const {
  std::ostringstream os;
  os << "dims=(" << join(dims, [](int n) { return std::to_string(n); }) << ") p=("
     << join(p, [](const Exponent& e) { return e.str(); }) << ") q=("
     << join(q, [](const Exponent& e) { return e.str(); }) << ")";
  if (lambda) os << " lambda=" << to_string(*lambda);
  return os.str();
}

Rational solve_lambda(const std::vector<int>& dims, const std::vector<Exponent>& p,
                      const std::vector<Exponent>& q) {
  Rational lambda = std::accumulate(dims.begin(), dims.end(), 0L);
  for (std::size_t i = 0; i < dims.size(); ++i)
    lambda += dims[i] * (q[i].reciprocal() - p[i].reciprocal());
  return lambda;
}

Rational homogeneity_defect(const IndexSpec& spec) {
  spec.validate();
  if (!spec.lambda) throw input_error("homogeneity defect needs lambda");
  Rational defect = *spec.lambda - spec.total_dim();
  for (std::size_t i = 0; i < spec.blocks(); ++i)
    defect += spec.dims[i] * (spec.p[i].reciprocal() - spec.q[i].reciprocal());
  return defect;
}

Rational hls_exponent(const IndexSpec& spec) {
  spec.validate();
  Rational sum = 0;
  for (std::size_t i = 0; i < spec.blocks(); ++i) {
    if (spec.p[i] < 1 || spec.q[i] < 1)
      throw domain_error("kernel power needs exponents >= 1, got " + spec.str());
    sum += spec.dims[i] * (2 - spec.p[i].reciprocal() - spec.q[i].reciprocal());
  }
  return sum;
}

IndexSpec dual(const IndexSpec& spec) {
  spec.validate();
  IndexSpec d{spec.dims, {}, {}, spec.lambda};
  d.p.reserve(spec.blocks());
  d.q.reserve(spec.blocks());
  for (std::size_t i = 0; i < spec.blocks(); ++i) {
    d.p.push_back(conjugate(spec.q[i]));
    d.q.push_back(conjugate(spec.p[i]));
  }
  return d;
}

}  // namespace hlskit
