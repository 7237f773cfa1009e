#include "doctest.h"

#include <cmath>
#include <random>

#include "halfspace/potential.hpp"
#include "halfspace/quadrature.hpp"
#include "halfspace/solver.hpp"

using namespace halfspace;

namespace {

// independent radial oracle: Delta(a r^e log r + b r^e) in dimension d
struct RadialPair {
    double a, b;
    int e;
};

RadialPair radial_laplacian(RadialPair p, int d) {
    RadialPair q;
    const double ee = static_cast<double>(p.e);
    q.a = p.a * ee * (ee + d - 2);
    q.b = p.b * ee * (ee + d - 2) + p.a * (2 * ee + d - 2);
    q.e = p.e - 2;
    return q;
}

double eval_radial(const RadialPair& p, double r) {
    return (p.a * std::log(r) + p.b) * std::pow(r, p.e);
}

double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    double n = static_cast<double>(xs.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// even tail profile x^k (1+x^2)^{-(J+k)/2} log(e^2+x^2)^{-delta}
double tail_basis(double x, int k, int J, double delta) {
    return std::pow(x, k) * std::pow(1.0 + x * x, -0.5 * (J + k)) *
           std::pow(std::log(std::exp(2.0) + x * x), -delta);
}

// even ring bump supported on 1/2 < |u| < 1
double ring(double u) {
    double t = 4.0 * (std::abs(u) - 0.75);
    return std::abs(t) < 1.0 ? std::exp(-1.0 / (1.0 - t * t)) : 0.0;
}

// Dyadic atom sum: per scale 2^l an annulus-supported bump with its grid
// moments killed through degree L, sized 2^{-lJ}. Every dyadic annulus then
// carries amplitude |x|^{-J} while no partial moment can grow, which is the
// extremal profile for the Riesz decay rate.
GridField moment_free_tail_field(double extent, std::size_t n, int J, int L, int lmax) {
    GridField f(1, extent, n);
    const int ncond = L / 2 + 1;  // even moments; odd ones vanish by parity
    const int nb = ncond + 1;
    for (int l = 0; l <= lmax; ++l) {
        const double s = std::pow(2.0, l);
        std::vector<std::vector<double>> V(nb, std::vector<double>(n, 0.0));
        for (std::size_t i = 0; i < n; ++i) {
            double u = f.coord(i) / s;
            double r = ring(u);
            if (r == 0.0) continue;
            for (int b = 0; b < nb; ++b) V[b][i] = r * std::pow(u, 2 * b);
        }
        std::vector<std::vector<double>> B(ncond, std::vector<double>(ncond));
        std::vector<double> rhs(ncond);
        for (int c = 0; c < ncond; ++c) {
            auto mom = [&](int b) {
                double acc = 0.0;
                for (std::size_t i = 0; i < n; ++i)
                    if (V[b][i] != 0.0) acc += std::pow(f.coord(i), 2 * c) * V[b][i];
                return acc;
            };
            for (int b = 0; b < ncond; ++b) B[c][b] = mom(b);
            rhs[c] = -mom(ncond);
        }
        for (int col = 0; col < ncond; ++col)
            for (int r2 = 0; r2 < ncond; ++r2) {
                if (r2 == col) continue;
                double fr = B[r2][col] / B[col][col];
                for (int k = 0; k < ncond; ++k) B[r2][k] -= fr * B[col][k];
                rhs[r2] -= fr * rhs[col];
            }
        std::vector<double> a(nb);
        a[ncond] = 1.0;
        for (int c = 0; c < ncond; ++c) a[c] = rhs[c] / B[c][c];
        const double amp = std::pow(2.0, -static_cast<double>(l) * J);
        for (std::size_t i = 0; i < n; ++i) {
            double add = 0.0;
            for (int b = 0; b < nb; ++b) add += a[b] * V[b][i];
            f.at(i) += amp * add;
        }
    }
    return f;
}

}  // namespace

TEST_SUITE("potential") {
    TEST_CASE("phi basics") {
        CHECK(phi(2, 2, {1.0, 0.0, 0.0}, 3.7) == 0.0);  // log 1 = 0
        CHECK_THROWS_AS(phi(2, 2, {0.0, 0.0, 0.0}, 1.0), SingularityError);
        // scaling law in the log case
        const double C = 0.8, lam = 2.5;
        Point x{0.7, -0.4, 0.0};
        double r2m_d = std::pow(std::hypot(x[0], x[1]), 2.0);
        double lhs = phi(2, 2, {lam * x[0], lam * x[1], 0.0}, C);
        double rhs = std::pow(lam, 2.0) * phi(2, 2, x, C) +
                     C * std::pow(lam, 2.0) * r2m_d * std::log(lam);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
    }

    TEST_CASE("calibrate: Newtonian constant and probe independence") {
        Calibration c13 = calibrate(1, 3);
        CHECK(c13.C == doctest::Approx(-1.0 / (4.0 * M_PI)).epsilon(1e-8));
        CHECK(c13.error_estimate < 1e-8);
        Calibration again = calibrate(1, 3, 1.3);
        CHECK(again.C == doctest::Approx(c13.C).epsilon(1e-8));
        Calibration c22a = calibrate(2, 2), c22b = calibrate(2, 2, 0.8);
        CHECK(c22a.C == doctest::Approx(c22b.C).epsilon(1e-8));
        CHECK_THROWS_AS(calibrate(0, 2), std::domain_error);
    }

    TEST_CASE("calibrate: fourier-side convention cross-check") {
        // <C phi_u, Delta^{m+1} gamma> should equal the Fourier-side value
        // (2 pi)^{-d} int (-1)^m |xi|^{-2m} (-|xi|^2)^{m+1} gamma^ d xi,
        // which is -(2 pi)^{-d} int |xi|^2 gamma^ = Delta gamma(0) = -d.
        for (auto [m, d] : {std::pair{2, 2}, std::pair{2, 3}}) {
            Calibration cal = calibrate(m, d);
            const double dd = static_cast<double>(d);
            const double surf = (d == 2) ? 2.0 * M_PI : 4.0 * M_PI;

            // Delta(p e^{-r^2/2}) = [p'' + (d-1)p'/r - 2rp' + (r^2-d)p] e^{-r^2/2};
            // p stays an even polynomial, iterate m+1 times from p = 1
            std::vector<double> p = {1.0};
            for (int it = 0; it < m + 1; ++it) {
                std::vector<double> next(p.size() + 2, 0.0);
                for (std::size_t i = 0; i < p.size(); ++i) {
                    if (p[i] == 0.0) continue;
                    const double di = static_cast<double>(i);
                    if (i >= 2) next[i - 2] += p[i] * di * (di - 1.0);   // p''
                    if (i >= 2) next[i - 2] += (dd - 1.0) * di * p[i];   // (d-1) p'/r
                    next[i] += -2.0 * di * p[i];                         // -2 r p'
                    next[i + 2] += p[i];                                 // r^2 p
                    next[i] += -dd * p[i];                               // -d p
                }
                p = std::move(next);
            }
            auto peval = [&](double r) {
                double v = 0.0;
                for (std::size_t i = p.size(); i-- > 0;) v = v * r + p[i];
                return v;
            };
            auto phiu = [&](double r) {
                double base = std::pow(r, 2 * m - d);
                if (d % 2 == 0 && 2 * m >= d) base *= std::log(r);
                return base;
            };
            double lhs = 0.0;
            {
                auto f = [&](double r) {
                    return phiu(r) * peval(r) * std::exp(-0.5 * r * r) * std::pow(r, d - 1);
                };
                double total = integrate_gl(f, 1.0, 14.0, 160);
                double lo = 1.0;
                for (int level = 0; level < 50; ++level) {
                    total += integrate_gl(f, lo * 0.5, lo, 4);
                    lo *= 0.5;
                    if (std::abs(f(lo)) * lo < 1e-20) break;
                }
                lhs = cal.C * surf * total;
            }
            double rhs = -(std::pow(2.0 * M_PI, -dd)) * std::pow(2.0 * M_PI, 0.5 * dd) * surf *
                         integrate_gl(
                             [&](double rho) {
                                 return std::pow(rho, dd + 1.0) * std::exp(-0.5 * rho * rho);
                             },
                             0.0, 40.0, 200);
            CHECK(rhs == doctest::Approx(-dd).epsilon(1e-10));
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-6));
        }
    }

    TEST_CASE("dphi: structure, finite differences, homogeneity, log part") {
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> u(-2.0, 2.0);
        for (auto [m, d] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 2},
                            std::pair{3, 3}}) {
            // chain check: one more FD derivative of the exact form
            for (int total = 0; total <= 3; ++total)
                for (int ax = 0; ax < d; ++ax) {
                    std::array<int, 3> beta{0, 0, 0};
                    beta[ax % d] = total;  // stack derivatives along one axis
                    RadialLogForm base = dphi_structure(m, d, beta);
                    std::array<int, 3> beta2 = beta;
                    beta2[ax] += 1;
                    RadialLogForm next = dphi_structure(m, d, beta2);
                    for (int rep = 0; rep < 5; ++rep) {
                        Point x{u(rng), u(rng), d == 3 ? u(rng) : 0.0};
                        double r = std::hypot(x[0], x[1], x[2]);
                        if (r < 0.5) continue;
                        const double h = 1e-2;
                        double fd = 0.0;
                        const double w[5] = {1.0 / 12, -8.0 / 12, 0.0, 8.0 / 12, -1.0 / 12};
                        for (int s = -2; s <= 2; ++s) {
                            if (w[s + 2] == 0.0) continue;
                            Point xs = x;
                            xs[ax] += s * h;
                            fd += w[s + 2] * base.evaluate(xs, d);
                        }
                        fd /= h;
                        double exact = next.evaluate(x, d);
                        CHECK(fd == doctest::Approx(exact).epsilon(1e-6).scale(
                                        std::max(1.0, std::abs(exact))));
                    }
                }

            // homogeneity degree bookkeeping and the scaling law
            std::array<int, 3> beta{1, 1, 0};
            RadialLogForm f = dphi_structure(m, d, beta);
            CHECK(f.degree() == 2 * m - d - 2);
            if (f.log_part_is_zero(d)) {
                Point x0{0.8, -0.6, d == 3 ? 0.4 : 0.0};
                const double lam = 1.7;
                Point xs{lam * x0[0], lam * x0[1], lam * x0[2]};
                CHECK(f.evaluate(xs, d) ==
                      doctest::Approx(std::pow(lam, f.degree()) * f.evaluate(x0, d))
                          .epsilon(1e-12));
            }

            // mixed partials through the same engine
            for (std::array<int, 3> mixed :
                 {std::array<int, 3>{1, 1, 0}, std::array<int, 3>{2, 1, 0}}) {
                if (d == 2) mixed[2] = 0;
                RadialLogForm base = dphi_structure(m, d, mixed);
                std::array<int, 3> up = mixed;
                up[1] += 1;
                RadialLogForm next = dphi_structure(m, d, up);
                Point x{1.1, 0.7, d == 3 ? -0.9 : 0.0};
                const double h = 1e-2;
                const double w[5] = {1.0 / 12, -8.0 / 12, 0.0, 8.0 / 12, -1.0 / 12};
                double fd = 0.0;
                for (int s2 = -2; s2 <= 2; ++s2) {
                    if (w[s2 + 2] == 0.0) continue;
                    Point xs = x;
                    xs[1] += s2 * h;
                    fd += w[s2 + 2] * base.evaluate(xs, d);
                }
                fd /= h;
                double exact = next.evaluate(x, d);
                CHECK(fd == doctest::Approx(exact).epsilon(1e-6).scale(
                                std::max(1.0, std::abs(exact))));
            }

            // log part vanishes iff d odd or |beta| > 2m-d
            for (int b1 = 0; b1 <= 4; ++b1) {
                std::array<int, 3> bb{b1, 0, 0};
                RadialLogForm g = dphi_structure(m, d, bb);
                bool none = g.log_part_is_zero(d);
                if (d % 2 == 1 || b1 > 2 * m - d)
                    CHECK(none);
                else
                    CHECK_FALSE(none);
            }
        }
    }

    TEST_CASE("kernel: engine agrees with the radial recursion") {
        // Delta^{j/2} of the unit fundamental profile, both symbolically and
        // via the scalar radial recursion
        for (auto [m, d] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 3}}) {
            for (int j = 0; j + 1 < 2 * m; j += 2) {
                RadialLogForm engine = kernel_structure(j, m, d);
                RadialPair p{(d % 2 == 0 && 2 * m >= d) ? 1.0 : 0.0,
                             (d % 2 == 0 && 2 * m >= d) ? 0.0 : 1.0, 2 * m - d};
                for (int it = 0; it < j / 2; ++it) p = radial_laplacian(p, d);
                for (double r : {0.4, 1.0, 2.3, 7.7}) {
                    Point x{r / std::sqrt(2.0), r / std::sqrt(2.0), 0.0};
                    if (d == 3) x = {r / std::sqrt(3.0), r / std::sqrt(3.0), r / std::sqrt(3.0)};
                    double a = engine.evaluate(x, d);
                    double b = eval_radial(p, r);
                    CHECK(a == doctest::Approx(b).epsilon(1e-10).scale(
                                   std::max(1.0, std::abs(b))));
                }
            }
        }
    }

    TEST_CASE("kernel: j = 0 is phi, translation invariance, growth exponent") {
        const int m = 2, d = 3;
        Calibration cal = calibrate(m, d);
        Point x{0.3, -0.2, 0.9};
        Point y{-0.5, 0.4, 0.0};
        CHECK(kernel_k(0, m, d, x, y, cal.C) ==
              doctest::Approx(phi(m, d, {x[0] - y[0], x[1] - y[1], x[2]}, cal.C))
                  .epsilon(1e-13));
        // translation along the boundary
        Point xt{x[0] + 1.3, x[1] - 0.7, x[2]};
        Point yt{y[0] + 1.3, y[1] - 0.7, 0.0};
        for (int j = 0; j < 2 * m - 1; ++j)
            CHECK(kernel_k(j, m, d, x, y, cal.C) ==
                  doctest::Approx(kernel_k(j, m, d, xt, yt, cal.C)).epsilon(1e-12));
        // near-diagonal growth ~ |x - y|^{2m - d - j} (d odd: no logs)
        for (int j = 0; j < 2 * m - 1; ++j) {
            std::vector<double> ls, lv;
            for (double eps = 1e-3; eps < 3e-2; eps *= 2.0) {
                Point xx{0.0, 0.0, eps};
                ls.push_back(std::log(eps));
                lv.push_back(std::log(std::abs(kernel_k(j, m, d, xx, {0, 0, 0}, cal.C))));
            }
            CHECK(fit_slope(ls, lv) == doctest::Approx(2 * m - d - j).epsilon(0.05));
        }
    }

    TEST_CASE("quadrature_Tg: zero density, linearity") {
        const int m = 2, d = 2;
        Calibration cal = calibrate(m, d);
        DensityData zero;
        for (int j = 0; j < m; ++j) zero.g.push_back(GridField(1, 8.0, 128));
        QuadratureValue q0 = quadrature_Tg(zero, {0.3, 0.9, 0.0}, m, d, cal.C);
        CHECK(q0.value == 0.0);

        DensityData g;
        for (int j = 0; j < m; ++j) {
            GridField f(1, 8.0, 256);
            for (std::size_t i = 0; i < f.n(); ++i) {
                double x = f.coord(i);
                f.at(i) = (j == 0 ? std::sin(x) : std::cos(0.5 * x)) * std::exp(-x * x);
            }
            g.g.push_back(f);
        }
        DensityData g2 = g;
        for (auto& f : g2.g) f *= 2.0;
        Point p{0.4, 0.7, 0.0};
        CHECK(quadrature_Tg(g2, p, m, d, cal.C).value ==
              doctest::Approx(2.0 * quadrature_Tg(g, p, m, d, cal.C).value).epsilon(1e-12));
        CHECK_THROWS_AS(quadrature_Tg(g, {0.0, 0.0, 0.0}, m, d, cal.C), std::domain_error);
    }

    TEST_CASE("quadrature on the two-dimensional boundary") {
        const int m = 2, d = 3;
        Calibration cal = calibrate(m, d);
        DensityData zero;
        for (int j = 0; j < m; ++j) zero.g.push_back(GridField(2, 6.0, 32));
        CHECK(quadrature_Tg(zero, {0.1, 0.2, 0.8}, m, d, cal.C).value == 0.0);

        DensityData g;
        for (int j = 0; j < m; ++j) {
            GridField f(2, 6.0, 32);
            for (std::size_t iy = 0; iy < f.n(); ++iy)
                for (std::size_t ix = 0; ix < f.n(); ++ix) {
                    double x = f.coord(ix), y = f.coord(iy);
                    f.at(ix, iy) = (j == 0 ? x : x * y) * std::exp(-x * x - y * y);
                }
            g.g.push_back(f);
        }
        Point p{0.3, -0.2, 0.7};
        DensityData g2 = g;
        for (auto& f : g2.g) f *= -3.0;
        CHECK(quadrature_Tg(g2, p, m, d, cal.C).value ==
              doctest::Approx(-3.0 * quadrature_Tg(g, p, m, d, cal.C).value).epsilon(1e-12));
    }

    TEST_CASE("direct and spectral paths agree off the boundary") {
        // d = 2, m = 2: Hermite-type densities with enough vanishing moments
        // that the periodization error of the spectral path stays far below
        // the quadrature tolerance
        const int m = 2, d = 2;
        const double L = 48.0;
        const std::size_t n = 4096;
        Calibration cal = calibrate(m, d);
        DensityData g;
        for (int j = 0; j < m; ++j) {
            GridField f(1, L, n);
            const int q = 5 - j;  // 5th and 4th derivatives of a gaussian
            for (std::size_t i = 0; i < n; ++i) {
                double x = f.coord(i);
                double h0 = 1.0, h1 = 2.0 * x;
                for (int t = 2; t <= q; ++t) {
                    double h2 = 2.0 * x * h1 - 2.0 * (t - 1) * h0;
                    h0 = h1;
                    h1 = h2;
                }
                f.at(i) = ((q % 2 == 0) ? 1.0 : -1.0) * h1 * std::exp(-x * x);
            }
            g.g.push_back(f);
        }
        for (Point p : {Point{0.2, 0.45, 0}, Point{-1.1, 0.8, 0}, Point{0.6, 1.4, 0},
                        Point{2.2, 0.35, 0}, Point{-0.4, 0.6, 0}}) {
            GridField slice = extend(g, p[1], d);
            // evaluate exactly on the nearest grid point so no interpolation
            // enters the comparison
            std::size_t bi = 0;
            double bd = 1e300;
            for (std::size_t i = 0; i < slice.n(); ++i)
                if (std::abs(slice.coord(i) - p[0]) < bd) {
                    bd = std::abs(slice.coord(i) - p[0]);
                    bi = i;
                }
            Point snapped{slice.coord(bi), p[1], 0.0};
            QuadratureValue direct = quadrature_Tg(g, snapped, m, d, cal.C);
            double spectral = slice.at(bi);
            CHECK(std::abs(direct.value - spectral) <=
                  1e-3 * std::max(1.0, std::abs(spectral)) + 10.0 * direct.error_estimate);
        }
    }

    TEST_CASE("moment truncation: support, exactness, moments") {
        const double L = 64.0;
        const std::size_t n = 8192;
        // hermite-type data with two vanishing moments
        GridField f(1, L, n);
        for (std::size_t i = 0; i < n; ++i) {
            double x = f.coord(i);
            f.at(i) = (8.0 * x * x * x - 12.0 * x) * std::exp(-x * x);  // H3 gaussian
        }
        TruncationResult t = moment_truncation(f, 8.0, 2);
        for (std::size_t i = 0; i < n; ++i)
            if (std::abs(f.coord(i)) >= 8.0) CHECK(t.compact.at(i) == 0.0);
        for (double mr : t.moment_residuals) CHECK(mr < 1e-9);

        // f supported deep inside R: remainder vanishes identically
        // (H3 at the matching gaussian scale keeps the moments zero)
        GridField mini(1, L, n);
        for (std::size_t i = 0; i < n; ++i) {
            double x = mini.coord(i);
            double u = 2.0 * x;
            mini.at(i) = (std::abs(x) < 2.0)
                             ? (8.0 * u * u * u - 12.0 * u) * std::exp(-u * u)
                             : 0.0;
        }
        TruncationResult t2 = moment_truncation(mini, 8.0, 1);
        CHECK(t2.remainder.max_abs() == 0.0);

        // precondition: a plain gaussian has mass
        GridField bad(1, L, n);
        for (std::size_t i = 0; i < n; ++i) bad.at(i) = std::exp(-bad.coord(i) * bad.coord(i));
        CHECK_THROWS_AS(moment_truncation(bad, 4.0, 0), PreconditionError);
    }

    TEST_CASE("dyadic pieces decay at the advertised rate") {
        const int J = 2, L = 1;  // J = L + N
        // smooth tail with a mild log weight; the gaussian corrector kills
        // the mass and parity kills the first moment
        GridField f(1, 1024.0, 1 << 18);
        for (std::size_t i = 0; i < f.n(); ++i) f.at(i) = tail_basis(f.coord(i), 0, J, 1.5);
        {
            GridField corr(1, 1024.0, 1 << 18);
            double mf = 0.0, mc = 0.0;
            for (std::size_t i = 0; i < corr.n(); ++i) {
                double x = corr.coord(i);
                corr.at(i) = std::exp(-x * x);
                mf += f.at(i);
                mc += corr.at(i);
            }
            for (std::size_t i = 0; i < f.n(); ++i) f.at(i) -= (mf / mc) * corr.at(i);
        }
        DyadicDecomposition dec = dyadic_decompose(f, 9, L);
        // each piece lives in its dyadic ball, hard zero outside
        for (int l = 0; l <= 8; ++l) {
            double r = std::pow(2.0, l);
            double outside = 0.0;
            for (std::size_t i = 0; i < dec.pieces[l].n(); ++i)
                if (std::abs(dec.pieces[l].coord(i)) >= r)
                    outside = std::max(outside, std::abs(dec.pieces[l].at(i)));
            CHECK(outside == 0.0);
        }
        std::vector<double> ls, lv;
        for (int l = 3; l <= 8; ++l) {
            double sup = dec.pieces[l].max_abs();
            CHECK(sup > 0.0);
            ls.push_back(static_cast<double>(l) * std::log(2.0));
            lv.push_back(std::log(sup));
        }
        double slope = fit_slope(ls, lv);
        CHECK(slope == doctest::Approx(-J).epsilon(0.15));
    }

    TEST_CASE("riesz decay study: moment conditions sharpen the rate") {
        const double X = 2048.0;
        const std::size_t n = 1 << 20;
        double prev = 0.0;
        for (int L = 0; L <= 2; ++L) {
            const int J = L + 1;
            GridField f = moment_free_tail_field(X, n, J, L, 10);
            DecayFit fit = riesz_decay_study(f, 0, 16.0, 256.0);
            CHECK(fit.slope == doctest::Approx(-(L + 1)).epsilon(0.2 / (L + 1)));
            if (L > 0) CHECK(fit.slope < prev - 0.5);
            prev = fit.slope;
        }
        // compact bump without moment conditions: baseline slope about -1
        GridField bump(1, X, n);
        for (std::size_t i = 0; i < n; ++i) {
            double x = bump.coord(i);
            bump.at(i) = std::abs(x) < 1.0 ? std::exp(-1.0 / (1.0 - x * x)) : 0.0;
        }
        DecayFit base = riesz_decay_study(bump, 0, 16.0, 256.0);
        CHECK(base.slope == doctest::Approx(-1.0).epsilon(0.1));
    }
}
