#ifndef HALFSPACE_PROFILE_HPP
#define HALFSPACE_PROFILE_HPP

#include <vector>

#include "halfspace/rational.hpp"

namespace halfspace {

/// Exact exponential-polynomial profile: t >= 0 maps to
///   prefactor * pi * exp(-t) * sum_i coeffs[i] t^i,
/// normalized so the first nonzero coefficient is 1. The all-zero profile has
/// prefactor 0 and empty coeffs.
struct ExpPolyProfile {
    Rational prefactor;
    std::vector<Rational> coeffs;

    double eval(double t) const;
    /// Polynomial value at rational t times prefactor (the pi*e^{-t} factor
    /// stripped); exact, used by the t = 0 identity checks.
    Rational poly_times_prefactor(const Rational& t) const;
    bool is_zero() const { return prefactor.is_zero(); }
};

/// Closed form of integral over R of zeta^p (1+zeta^2)^{-M} e^{i t zeta} dzeta
/// for t >= 0, p in {0, 1, 2} (p = 1 carries the i of the odd kernel: the
/// integrand is i*zeta*(...)), computed by an order-M residue at zeta = i with
/// exact Gaussian-rational arithmetic. Requires M >= 1 and absolute
/// integrability (p < 2M - 1).
ExpPolyProfile residue_profile(int p, int M);

}  // namespace halfspace

#endif
