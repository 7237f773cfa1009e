#include "halfspace/quadrature.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace halfspace {

namespace {

struct GLRule {
    std::array<double, 16> x, w;  // nodes/weights on [-1, 1]
};

// Legendre P_16 roots by Newton iteration from the Chebyshev initial guess.
GLRule make_gl16() {
    GLRule r;
    const int n = 16;
    for (int i = 0; i < n / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        r.x[i] = -x;
        r.x[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        r.w[i] = w;
        r.w[n - 1 - i] = w;
    }
    return r;
}

const GLRule& gl16() {
    static const GLRule rule = make_gl16();
    return rule;
}

double simpson(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a, double fa, double b,
                     double fb, double m, double fm, double whole, double tol, int depth) {
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = simpson(a, fa, m, fm, flm);
    double right = simpson(m, fm, b, fb, frm);
    double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    if (depth <= 0) throw AccuracyError("integrate_adaptive: tolerance not reached");
    return adaptive_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adaptive_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate_gl(const std::function<double(double)>& f, double a, double b, int panels) {
    const GLRule& r = gl16();
    double total = 0.0;
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        const double c = lo + 0.5 * h, s = 0.5 * h;
        double acc = 0.0;
        for (int i = 0; i < 16; ++i) acc += r.w[i] * f(c + s * r.x[i]);
        total += acc * s;
    }
    return total;
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, int max_depth) {
    double m = 0.5 * (a + b);
    double fa = f(a), fb = f(b), fm = f(m);
    double whole = simpson(a, fa, b, fb, fm);
    return adaptive_step(f, a, fa, b, fb, m, fm, whole, abs_tol, max_depth);
}

double oscillatory_kernel_integral(int p, int M, double t, double abs_tol) {
    if (M < 1 || p < 0 || p > 2 || p >= 2 * M - 1)
        throw std::domain_error("oscillatory_kernel_integral: bad kernel indices");
    if (t < 0.0) throw std::domain_error("oscillatory_kernel_integral: t must be >= 0");

    if (t == 0.0) {
        if (p == 1) return 0.0;  // odd integrand
        // zeta = tan(theta): integrand tan^p(theta) cos^{2M-2}(theta) -> smooth
        auto g = [&](double th) {
            double c = std::cos(th), s = std::sin(th);
            double base = std::pow(c, 2 * M - 2 - p) * std::pow(s, p);
            return base;
        };
        return 2.0 * integrate_adaptive(g, 0.0, 0.5 * M_PI, abs_tol * 0.25);
    }

    // even part: 2 int_0^inf z^p (1+z^2)^{-M} cos(t z)  (p = 0, 2)
    // odd part: -2 int_0^inf z (1+z^2)^{-M} sin(t z)    (p = 1)
    auto kernel = [&](double z) { return std::pow(z, p) * std::pow(1.0 + z * z, -M); };
    auto kernel_deriv = [&](double z) {
        double q = 1.0 + z * z;
        double d = (p > 0 ? p * std::pow(z, p - 1) * std::pow(q, -M) : 0.0) -
                   2.0 * M * std::pow(z, p + 1) * std::pow(q, -M - 1);
        return d;
    };

    // T such that the post-correction remainder |g'(T)|/t^2-scale is tiny
    double T = 10.0;
    auto remainder_bound = [&](double TT) {
        // two IBP terms applied; remainder <= int |g''|/t^2 ~ C |g'(T)|/t^2
        return 8.0 * (std::abs(kernel_deriv(TT)) + (2.0 * M + p) * kernel(TT) / TT) / (t * t);
    };
    while (remainder_bound(T) > 0.5 * abs_tol && T < 1e8) T *= 1.5;

    const double period = 2.0 * M_PI / t;
    double panel_len = std::min(1.0, period / 6.0);
    int panels = static_cast<int>(std::ceil(T / panel_len));
    if (panels > 40'000'000)
        throw AccuracyError("oscillatory_kernel_integral: panel budget exceeded");

    double head, tail;
    if (p == 1) {
        head = -2.0 * integrate_gl([&](double z) { return kernel(z) * std::sin(t * z); }, 0.0,
                                   T, panels);
        // IBP tail of -2 int_T^inf g sin(tz): g cos(tT)/t ... with signs below
        tail = -2.0 * (kernel(T) * std::cos(t * T) / t -
                       kernel_deriv(T) * std::sin(t * T) / (t * t));
    } else {
        head = 2.0 * integrate_gl([&](double z) { return kernel(z) * std::cos(t * z); }, 0.0, T,
                                  panels);
        tail = 2.0 * (-kernel(T) * std::sin(t * T) / t -
                      kernel_deriv(T) * std::cos(t * T) / (t * t));
    }
    return head + tail;
}

}  // namespace halfspace
