#include "hlskit/omega.hpp"

#include <string>

#include "hlskit/errors.hpp"
#include "hlskit/gamma.hpp"

namespace hlskit {

namespace {

std::string idx(std::size_t i) { return std::to_string(i + 1); }

class OmegaWalker {
 public:
  explicit OmegaWalker(const IndexSpec& spec) : spec_(spec) {
    for (std::size_t i = 0; i < spec.blocks(); ++i) {
      rp_.push_back(spec.p[i].reciprocal());
      rq_.push_back(spec.q[i].reciprocal());
    }
  }

  MembershipReport run() {
    report_.member = level(spec_.blocks(), 0);
    return std::move(report_);
  }

 private:
  const Exponent& p(std::size_t i) const { return spec_.p[i]; }
  const Exponent& q(std::size_t i) const { return spec_.q[i]; }
  // sign of 1/p_i + 1/q_j - 1
  int excess(std::size_t i, std::size_t j) const { return sgn(rp_[i] + rq_[j] - 1); }

  bool fail(int depth, std::string reason) {
    if (report_.reason.empty()) report_.reason = reason;
    report_.trace.push_back({depth, Rule::Fail, std::nullopt, std::move(reason)});
    return false;
  }

  bool level(std::size_t k, int depth) {
    if (k == 1) {
      if (p(0) > 1 && q(0) > 1 && p(0).is_finite() && q(0).is_finite() && excess(0, 0) > 0) {
        report_.trace.push_back({depth, Rule::Base, std::nullopt, "1 < p_1, q_1 < inf, 1/p_1 + 1/q_1 > 1"});
        return true;
      }
      return fail(depth, "base case requires 1 < p_1, q_1 < inf and 1/p_1 + 1/q_1 > 1");
    }

    for (std::size_t i = 0; i < k; ++i) {
      if (p(i) < 1) return fail(depth, "requires p_" + idx(i) + " >= 1");
      if (q(i) < 1) return fail(depth, "requires q_" + idx(i) + " >= 1");
      if (excess(i, i) < 0) return fail(depth, "requires 1/p_" + idx(i) + " + 1/q_" + idx(i) + " >= 1");
    }

    const std::size_t last = k - 1;
    const Exponent& pm = p(last);
    const Exponent& qm = q(last);
    const bool open_p = pm > 1 && pm.is_finite();
    const bool open_q = qm > 1 && qm.is_finite();

    if (open_p && open_q && excess(last, last) > 0) {
      report_.trace.push_back({depth, Rule::O1, std::nullopt, "1 < p_m, q_m < inf, 1/p_m + 1/q_m > 1"});
      return true;
    }
    if (pm == 1 && qm > 1) {
      if (auto w = o2_witness(k)) {
        report_.trace.push_back({depth, Rule::O2, static_cast<int>(*w + 1), "p_m = 1, q_m > 1, witness i_1"});
        return true;
      }
      return fail(depth, "O2 pattern (p_m = 1, q_m > 1) has no admissible i_1");
    }
    if (pm > 1 && qm == 1) {
      if (auto w = o3_witness(k)) {
        report_.trace.push_back({depth, Rule::O3, static_cast<int>(*w + 1), "p_m > 1, q_m = 1, witness i_2"});
        return true;
      }
      return fail(depth, "O3 pattern (p_m > 1, q_m = 1) has no admissible i_2");
    }
    if (pm == 1 && qm == 1) {
      report_.trace.push_back({depth, Rule::O4, std::nullopt, "p_m = q_m = 1; drop block"});
      return level(k - 1, depth + 1);
    }
    if (open_p && open_q && excess(last, last) == 0) {
      report_.trace.push_back({depth, Rule::O5, std::nullopt, "1/p_m + 1/q_m = 1; drop block"});
      return level(k - 1, depth + 1);
    }
    return fail(depth, "no rule among O1-O5 matches (p_m, q_m) = (" + pm.str() + ", " + qm.str() + ")");
  }

  std::optional<std::size_t> o2_witness(std::size_t k) const {
    const std::size_t last = k - 1;
    for (std::size_t w = last; w-- > 0;) {
      if (!(p(w) > 1 && excess(w, w) > 0)) continue;
      bool ok = true;
      for (std::size_t i = w + 1; i < last && ok; ++i) ok = p(i) == 1 || excess(i, i) == 0;
      for (std::size_t i = w; i <= last && ok; ++i) ok = excess(i, last) >= 0;
      if (ok) return w;
    }
    return std::nullopt;
  }

  std::optional<std::size_t> o3_witness(std::size_t k) const {
    const std::size_t last = k - 1;
    for (std::size_t w = last; w-- > 0;) {
      if (!(q(w) > 1 && excess(w, w) > 0)) continue;
      bool ok = true;
      for (std::size_t i = w + 1; i < last && ok; ++i) ok = q(i) == 1 || excess(i, i) == 0;
      for (std::size_t i = w; i <= last && ok; ++i) ok = excess(last, i) >= 0;
      if (ok) return w;
    }
    return std::nullopt;
  }

  const IndexSpec& spec_;
  std::vector<Rational> rp_, rq_;
  MembershipReport report_;
};

}  // namespace

MembershipReport omega_member(const IndexSpec& spec) {
  spec.validate();
  return OmegaWalker(spec).run();
}

MembershipReport omega_via_gamma(const IndexSpec& spec) {
  spec.validate();
  IndexSpec reduced{spec.dims, spec.p, {}, hls_exponent(spec)};
  reduced.q.reserve(spec.blocks());
  for (const auto& qi : spec.q) reduced.q.push_back(conjugate(qi));
  return gamma_member(reduced);
}

}  // namespace hlskit
