#ifndef HALFSPACE_SEQUENCES_HPP
#define HALFSPACE_SEQUENCES_HPP

#include <string>
#include <vector>

#include "halfspace/rational.hpp"

namespace halfspace {

// The six sequence/triangle families feeding the Hankel matrices and their
// triangular factors. Values are exact; triangle entries are memoized since
// the closed-form inverse evaluations revisit them constantly.

enum class SequenceKind {
    MiddleBinomial,
    Catalan,
    SemiCatalan,
    ShiftedSemiCatalan,
    SemiBinomial,
    ShiftedSemiBinomial,
};

std::string to_string(SequenceKind k);

/// b_j = C(2j, j)
Rational middle_binomial(long j);

/// c_j = C(2j, j) - C(2j, j+1)
Rational catalan(long j);

/// c_{n,k} = C(2n, n+k) - C(2n, n+k+1); zero outside 0 <= k <= n.
Rational semi_catalan(long n, long k);

/// c'_{n,k} = (k+1)/(n+1) * C(2n+2, n-k)
Rational shifted_semi_catalan(long n, long k);

/// b_{n,k} = sum_{i=k..n} c_{n,i}
Rational semi_binomial(long n, long k);

/// b'_{j,0} = b_{j,0} + b_{j,1}/2 ; b'_{j,k} = b_{j,k} + b_{j,k+1} for k > 0.
Rational shifted_semi_binomial(long j, long k);

/// Triangle value dispatch for the two-index kinds; the one-index kinds
/// ignore k. Used by the CLI table dump.
Rational sequence_value(SequenceKind kind, long n, long k);

struct IdentityFailure {
    std::string identity;
    long n;
    long k;
};

/// Exact verification, for all n <= n_max, of:
///   - alternating semi-Catalan sum = 0 (n >= 1),
///   - plain semi-Catalan sum = middle binomial,
///   - b_{k,0}/2 + sum_{j>=1} (-1)^j b_{k,j} = 0 for k > 0,
///   - b_{n,k} = c_{n,k} + b_{n,k+1}.
/// Returns the list of failing identities (expected empty).
std::vector<IdentityFailure> check_semicatalan_identities(long n_max);

}  // namespace halfspace

#endif
