#ifndef HALFSPACE_QUADRATURE_HPP
#define HALFSPACE_QUADRATURE_HPP

#include <functional>
#include <stdexcept>

namespace halfspace {

struct AccuracyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Composite Gauss-Legendre (16-point panels) on [a, b].
double integrate_gl(const std::function<double(double)>& f, double a, double b,
                    int panels);

/// Adaptive Simpson to absolute tolerance; throws AccuracyError when the
/// recursion depth runs out before the tolerance is met.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, int max_depth = 48);

/// Numeric oracle for the profile integrals: value of
///   integral over R of zeta^p (1+zeta^2)^{-M} e^{i t zeta} dzeta
/// (p = 1 carries the kernel's i, making all three cases real), t >= 0.
/// t = 0 uses the tangent substitution; t > 0 a panelized integral on [0, T]
/// plus a two-term integration-by-parts tail correction with a bounded
/// remainder below abs_tol.
double oscillatory_kernel_integral(int p, int M, double t, double abs_tol);

}  // namespace halfspace

#endif
