#pragma once

#include "hlskit/index_spec.hpp"
#include "hlskit/membership.hpp"

namespace hlskit {

struct GammaOptions {
  /// Try T5..T1 instead of T1..T5. Only the trace may differ, never the verdict.
  bool reverse_precedence = false;
};

/// Recursive membership test for the boundedness set Gamma_{lambda,m}.
///
/// At each level (blocks 1..k, order mu) the checks run in this order:
///   1. homogeneity sum_{i<=k} n_i/p_i = sum n_i/q_i + N_k - mu, exactly;
///   2. 1 <= p_i <= q_i <= inf for all i <= k;
///   3. k == 1: 1 < p_1 < q_1 < inf (BASE); otherwise one of T1..T5,
///      where T4 recurses with mu and T5 with mu - n_k.
/// T2/T3 witnesses are searched from k-1 downward, so the recorded witness is
/// the largest admissible index. Empty "for all" ranges are satisfied.
/// Never throws for a structurally valid spec; requires lambda.
MembershipReport gamma_member(const IndexSpec& spec, GammaOptions options = {});

/// Boundedness verdict for I_lambda: L^p -> L^q.
/// Throws precondition_error unless 0 < lambda < N_m.
MembershipReport riesz_bounded(const IndexSpec& spec);

/// Closed form for one block: 1 < p < q < inf and lambda = n/p' + n/q.
bool single_block_bounded(int n, const Exponent& p, const Exponent& q, const Rational& lambda);

}  // namespace hlskit
