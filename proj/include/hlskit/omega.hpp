#pragma once

#include "hlskit/index_spec.hpp"
#include "hlskit/membership.hpp"

namespace hlskit {

/// Recursive membership test for Omega_m, the index set of the mixed-norm
/// Hardy-Littlewood-Sobolev inequality with kernel power hls_exponent(p, q).
///
/// Level k (blocks 1..k):
///   k == 1: 1 < p_1, q_1 < inf and 1/p_1 + 1/q_1 > 1 (BASE);
///   k >= 2: 1 <= p_i, q_i <= inf and 1/p_i + 1/q_i >= 1 for i <= k, then one of
///           O1..O5 (O4 and O5 recurse on the first k-1 blocks).
/// Witnesses follow the same largest-index convention as gamma_member.
/// The lambda field of `spec` is ignored.
MembershipReport omega_member(const IndexSpec& spec);

/// The same verdict obtained through the boundedness set:
/// gamma_member(dims, p, q', hls_exponent(p, q)).
/// Throws domain_error if any exponent is below 1.
MembershipReport omega_via_gamma(const IndexSpec& spec);

}  // namespace hlskit
