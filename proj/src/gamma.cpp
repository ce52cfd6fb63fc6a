#include "hlskit/gamma.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <string>

#include "hlskit/errors.hpp"

namespace hlskit {

namespace {

std::string idx(std::size_t i) { return std::to_string(i + 1); }

class GammaWalker {
 public:
  GammaWalker(const IndexSpec& spec, GammaOptions options)
      : spec_(spec), options_(options) {
    rp_.reserve(spec.blocks());
    rq_.reserve(spec.blocks());
    for (std::size_t i = 0; i < spec.blocks(); ++i) {
      rp_.push_back(spec.p[i].reciprocal());
      rq_.push_back(spec.q[i].reciprocal());
    }
  }

  MembershipReport run() {
    report_.member = level(spec_.blocks(), *spec_.lambda, 0);
    return std::move(report_);
  }

 private:
  const Exponent& p(std::size_t i) const { return spec_.p[i]; }
  const Exponent& q(std::size_t i) const { return spec_.q[i]; }

  bool fail(int depth, std::string reason) {
    if (report_.reason.empty()) report_.reason = reason;
    report_.trace.push_back({depth, Rule::Fail, std::nullopt, std::move(reason)});
    return false;
  }

  // Blocks [0, k) at order mu.
  bool level(std::size_t k, const Rational& mu, int depth) {
    Rational defect = mu;
    for (std::size_t i = 0; i < k; ++i) {
      defect += spec_.dims[i] * (rp_[i] - rq_[i]);
      defect -= spec_.dims[i];
    }
    if (sgn(defect) != 0)
      return fail(depth, "homogeneity fails at " + std::to_string(k) + " blocks (defect " +
                             to_string(defect) + ")");

    for (std::size_t i = 0; i < k; ++i) {
      if (p(i) < 1) return fail(depth, "requires p_" + idx(i) + " >= 1");
      if (p(i) > q(i)) return fail(depth, "requires p_" + idx(i) + " <= q_" + idx(i));
    }

    if (k == 1) {
      if (p(0) > 1 && p(0) < q(0) && q(0).is_finite()) {
        report_.trace.push_back({depth, Rule::Base, std::nullopt, "1 < p_1 < q_1 < inf"});
        return true;
      }
      return fail(depth, "base case requires 1 < p_1 < q_1 < inf");
    }

    std::array<Rule, 5> order{Rule::T1, Rule::T2, Rule::T3, Rule::T4, Rule::T5};
    if (options_.reverse_precedence) std::reverse(order.begin(), order.end());

    const std::size_t last = k - 1;
    for (Rule rule : order) {
      switch (rule) {
        case Rule::T1:
          if (p(last) > 1 && p(last) < q(last) && q(last).is_finite()) {
            report_.trace.push_back({depth, Rule::T1, std::nullopt, "1 < p_m < q_m < inf"});
            return true;
          }
          break;
        case Rule::T2:
          if (p(last) == 1 && q(last).is_finite()) {
            if (auto w = t2_witness(k)) {
              report_.trace.push_back({depth, Rule::T2, static_cast<int>(*w + 1),
                                       "p_m = 1, q_m < inf, witness i_1"});
              return true;
            }
            return fail(depth, "T2 pattern (p_m = 1, q_m < inf) has no admissible i_1");
          }
          break;
        case Rule::T3:
          if (p(last) > 1 && q(last).is_infinite()) {
            if (auto w = t3_witness(k)) {
              report_.trace.push_back({depth, Rule::T3, static_cast<int>(*w + 1),
                                       "p_m > 1, q_m = inf, witness i_2"});
              return true;
            }
            return fail(depth, "T3 pattern (p_m > 1, q_m = inf) has no admissible i_2");
          }
          break;
        case Rule::T4:
          if (p(last) == 1 && q(last).is_infinite()) {
            report_.trace.push_back({depth, Rule::T4, std::nullopt, "p_m = 1, q_m = inf; drop block"});
            return level(k - 1, mu, depth + 1);
          }
          break;
        case Rule::T5:
          if (p(last) > 1 && p(last) == q(last) && q(last).is_finite()) {
            report_.trace.push_back(
                {depth, Rule::T5, std::nullopt, "1 < p_m = q_m < inf; drop block, lower order by n_m"});
            return level(k - 1, mu - spec_.dims[last], depth + 1);
          }
          break;
        default:
          break;
      }
    }
    return fail(depth, "no rule among T1-T5 matches (p_m, q_m) = (" + p(last).str() + ", " +
                           q(last).str() + ")");
  }

  std::optional<std::size_t> t2_witness(std::size_t k) const {
    const std::size_t last = k - 1;
    for (std::size_t w = last; w-- > 0;) {
      if (!(p(w) > 1 && p(w) < q(w))) continue;
      bool ok = true;
      for (std::size_t i = w + 1; i < last && ok; ++i) ok = p(i) == 1 || p(i) == q(i);
      for (std::size_t i = w; i <= last && ok; ++i) ok = q(last) >= p(i);
      if (ok) return w;
    }
    return std::nullopt;
  }

  std::optional<std::size_t> t3_witness(std::size_t k) const {
    const std::size_t last = k - 1;
    for (std::size_t w = last; w-- > 0;) {
      if (!(p(w) < q(w) && q(w).is_finite())) continue;
      bool ok = true;
      for (std::size_t i = w + 1; i < last && ok; ++i) ok = q(i).is_infinite() || q(i) == p(i);
      for (std::size_t i = w; i <= last && ok; ++i) ok = p(last) <= q(i);
      if (ok) return w;
    }
    return std::nullopt;
  }

  const IndexSpec& spec_;
  GammaOptions options_;
  std::vector<Rational> rp_, rq_;
  MembershipReport report_;
};

}  // namespace

MembershipReport gamma_member(const IndexSpec& spec, GammaOptions options) {
  spec.validate();
  if (!spec.lambda) throw input_error("membership test needs lambda");
  return GammaWalker(spec, options).run();
}

MembershipReport riesz_bounded(const IndexSpec& spec) {
  spec.validate();
  if (!spec.lambda) throw input_error("boundedness test needs lambda");
  if (sgn(*spec.lambda) <= 0 || *spec.lambda >= spec.total_dim())
    throw precondition_error("order outside (0, N_m): lambda = " + to_string(*spec.lambda));
  return gamma_member(spec);
}

bool single_block_bounded(int n, const Exponent& p, const Exponent& q, const Rational& lambda) {
  if (!(p > 1 && p < q && q.is_finite())) return false;
  return lambda == n * (1 - p.reciprocal()) + n * q.reciprocal();
}

}  // namespace hlskit
