#ifndef HALFSPACE_SYMBOL_HPP
#define HALFSPACE_SYMBOL_HPP

#include <complex>
#include <vector>

#include "halfspace/exact_matrix.hpp"
#include "halfspace/profile.hpp"

namespace halfspace {

struct ConsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The boundary-operator symbol matrix M for order m, together with its
/// diagonal/permutation factorization P D1 M D2 P^T = tildeM (block Hankel)
/// and its exact inverse (computed twice and cross-checked).
struct SymbolTable {
    int m;
    ExactMatrix M;
    ExactMatrix D1, D2;        // diagonal, entries +/- powers of 2
    std::vector<int> perm;     // tilde index a <- original index perm[a]
    ExactMatrix tildeM;        // blockdiag(B(n+1), C'(n)) or (B'(n), C(n))
    ExactMatrix Minv;
};

/// M[k][j] = 2^{1+j+k-2m} b_{m-(j+k)/2-1}   (j, k even)
///         = -2^{j+k-2m} c_{m-(j+k)/2-1}    (j, k odd)
///         = 0                              (j+k odd)
SymbolTable build_M(int m);

struct DetM {
    Rational computed;        // exact elimination
    Rational claimed_paper;   // (-1)^{floor(m/2)} 2^{m^2}
    Rational derived;         // (-1)^{floor(m/2)} 2^{-m^2}
};

DetM det_M(int m);

/// Exact inverse; throws ConsistencyError if direct elimination and the
/// block closed forms conjugated back through P, D1, D2 ever disagree.
ExactMatrix invert_M(int m);

/// Pointwise kernel evaluations used by the quadrature oracle. tau is the
/// j-th boundary-layer kernel; omega the (k,j) trace kernel including its
/// (2 pi)^{-d} normalization (pass d).
std::complex<double> tau(int j, int m, double zeta);
std::complex<double> omega(int k, int j, int m, int d, double zeta);

/// Exact profile of t -> integral of (2 pi)^d omega_{k,j}(zeta) e^{i t zeta},
/// i.e. the omega integral with the dimensional normalization stripped, so
/// the result is a rational multiple of pi times e^{-t} poly(t).
/// At t = 0 this equals 2 pi (-1)^{(j+k-2m)/2} M_{k,j} for even j+k, and 0
/// for odd j+k.
ExpPolyProfile poisson_profile(int k, int j, int m);

/// Alternative boundary conditions (pure normal derivatives): the Hankel
/// blocks H1 = (a_{j+k}) and H2 = (a_{j+k+1}) with
/// a_n = integral of zeta^{2n} (1+zeta^2)^{-m} = pi * rational; returned as
/// the rational parts (the pi is implied). H2 is empty for m = 1.
struct AltBcSymbol {
    ExactMatrix H1, H2;
};

AltBcSymbol alt_bc_symbol(int m);

/// a_n itself (rational part of a_n / pi); throws for 2n >= 2m - 1.
Rational alt_bc_moment(int n, int m);

/// Product-operator symbol (distinct positive shifts r): evaluates
///   (1/2) sum_l (t^2 + r_l^2)^{(j+k-1)/2} / prod_{nu != l} (r_nu^2 - r_l^2)
/// in floating point; exactly 0 for odd j+k. Throws on repeated r values.
double product_operator_symbol(int j, int k, double t, const std::vector<double>& r);

}  // namespace halfspace

#endif
