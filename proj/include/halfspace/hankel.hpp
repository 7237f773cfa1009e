#ifndef HALFSPACE_HANKEL_HPP
#define HALFSPACE_HANKEL_HPP

#include <string>

#include "halfspace/exact_matrix.hpp"

namespace halfspace {

/// The four Hankel families: middle binomials b_{j+k}, shifted binomials
/// b_{j+k+1}, Catalans c_{j+k}, shifted Catalans c_{j+k+1}.
enum class HankelKind { B, Bshift, C, Cshift };

std::string to_string(HankelKind k);
HankelKind hankel_kind_from_string(const std::string& s);

/// Triangular factor bundle: L·D·Lᵀ reconstructs build(kind, n) exactly.
/// For C, C': D = identity and L is the (shifted) semi-Catalan triangle.
/// For B: D = diag(1,2,...,2); for B': D = diag(2,...,2).
struct FactorBundle {
    HankelKind kind;
    std::size_t n;
    ExactMatrix L;
    ExactMatrix D;
};

ExactMatrix hankel_build(HankelKind kind, std::size_t n);

FactorBundle hankel_factor(HankelKind kind, std::size_t n);

/// Closed-form inverse of the triangular factor L:
///   S^-1:  (-1)^{j+k} C(j+k, j-k)
///   S'^-1: (-1)^{j+k} C(j+k+1, j-k)
///   R^-1:  (-1)^{j+k} [2 C(j+k, j-k) - C(j+k-1, j-k)]
///   R'^-1: (-1)^{j+k} [2 C(j+k+1, j-k) - C(j+k, j-k)]
/// with the C(-1,0) = 1 boundary convention fixed in rational.hpp.
ExactMatrix hankel_closed_inverse_factor(HankelKind kind, std::size_t n);

/// Closed-form inverse of the full Hankel matrix (the L^-T D^-1 L^-1 sums,
/// including the extra delta/2 term at (0,0) for kind B).
ExactMatrix hankel_closed_inverse(HankelKind kind, std::size_t n);

struct DeterminantIdentity {
    Rational claimed;   // 2^{n-1}, 2^n, 1, 1 per kind
    Rational computed;  // exact elimination
};

DeterminantIdentity hankel_determinant_identity(HankelKind kind, std::size_t n);

}  // namespace halfspace

#endif
