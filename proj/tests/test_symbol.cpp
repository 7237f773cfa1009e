#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "halfspace/hankel.hpp"
#include "halfspace/quadrature.hpp"
#include "halfspace/symbol.hpp"

using namespace halfspace;

TEST_SUITE("symbol") {
    TEST_CASE("small symbol matrices") {
        SymbolTable t1 = build_M(1);
        CHECK(t1.M == ExactMatrix::from_rows(1, 1, {Rational(1, 2)}));
        CHECK(t1.Minv == ExactMatrix::from_rows(1, 1, {Rational(2)}));

        SymbolTable t2 = build_M(2);
        CHECK(t2.M == ExactMatrix::from_rows(2, 2,
                                             {Rational(1, 4), Rational(0), Rational(0),
                                              Rational(-1, 4)}));
        CHECK(t2.Minv == ExactMatrix::from_rows(2, 2,
                                                {Rational(4), Rational(0), Rational(0),
                                                 Rational(-4)}));

        // m = 3: tildeM = blockdiag(B(2), C'(1)) = blockdiag([[1,2],[2,6]],[[1]])
        SymbolTable t3 = build_M(3);
        CHECK(t3.tildeM == ExactMatrix::from_rows(3, 3,
                                                  {Rational(1), Rational(2), Rational(0),
                                                   Rational(2), Rational(6), Rational(0),
                                                   Rational(0), Rational(0), Rational(1)}));
    }

    TEST_CASE("checkerboard and factorization identity, m <= 12") {
        for (int m = 1; m <= 12; ++m) {
            SymbolTable t = build_M(m);
            for (int k = 0; k < m; ++k)
                for (int j = 0; j < m; ++j)
                    CHECK(t.M.at(k, j).is_zero() == (((j + k) % 2) == 1));
            // P D1 M D2 P^T = tildeM was verified blockwise inside build_M;
            // check the diagonal determinant bookkeeping here.
            CHECK(t.D1.det() == Rational::pow2((long(m) * m) / 2));
            Rational d2 = t.D2.det();
            CHECK(d2.abs() == Rational::pow2(m * (m + 1) / 2));
            CHECK(d2.sign() == ((m / 2) % 2 == 0 ? 1 : -1));
            CHECK((t.M * t.Minv).is_identity());
            // inverse keeps the checkerboard
            for (int k = 0; k < m; ++k)
                for (int j = 0; j < m; ++j)
                    if ((j + k) % 2 == 1) CHECK(t.Minv.at(k, j).is_zero());
        }
    }

    TEST_CASE("det M: derived value and flagged paper claim") {
        CHECK(det_M(1).computed == Rational(1, 2));
        CHECK(det_M(2).computed == Rational(-1, 16));
        CHECK(det_M(3).computed == Rational(-1, 512));
        for (int m = 1; m <= 12; ++m) {
            DetM d = det_M(m);
            CHECK(d.computed == d.derived);
            CHECK(d.computed.abs() == Rational::pow2(-long(m) * m));
            CHECK(d.computed.sign() == ((m / 2) % 2 == 0 ? 1 : -1));
            // the Proposition's exponent has the opposite sign; recorded, not equal
            CHECK(d.claimed_paper.abs() == Rational::pow2(long(m) * m));
            CHECK(d.claimed_paper != d.computed);
        }
    }

    TEST_CASE("tau parity and omega integrability") {
        for (int m = 2; m <= 4; ++m)
            for (int j = 0; j < m; ++j)
                for (double z : {0.3, 1.7, -2.4}) {
                    auto a = tau(j, m, z), b = tau(j, m, -z);
                    if (j % 2 == 1) {
                        CHECK(a.real() == doctest::Approx(-b.real()));
                        CHECK(a.imag() == doctest::Approx(-b.imag()));
                    } else {
                        CHECK(a.real() == doctest::Approx(b.real()));
                    }
                }
        // |omega| <= C (1+z^2)^{(j+k)/2 - m}
        for (int m = 2; m <= 4; ++m)
            for (int k = 0; k < m; ++k)
                for (int j = 0; j < m; ++j)
                    for (double z : {0.0, 0.9, 3.0, 11.0}) {
                        double bound = 2.0 * std::pow(1.0 + z * z, 0.5 * (j + k) - m);
                        CHECK(std::abs(omega(k, j, m, 2, z)) <= bound);
                    }
    }

    TEST_CASE("profile at t = 0 is 2 pi (-1)^{(j+k-2m)/2} M_{k,j}") {
        for (int m = 1; m <= 6; ++m) {
            SymbolTable t = build_M(m);
            for (int k = 0; k < m; ++k)
                for (int j = 0; j < m; ++j) {
                    ExpPolyProfile p = poisson_profile(k, j, m);
                    Rational at0 = p.poly_times_prefactor(Rational(0));
                    if ((j + k) % 2 == 1) {
                        CHECK(at0.is_zero());
                        continue;
                    }
                    int sgn = ((j + k) / 2 - m) % 2 == 0 ? 1 : -1;
                    // profile strips (2 pi)^{-d} and keeps one factor 2 from
                    // the remaining 2 pi (the pi itself is implied)
                    CHECK(at0 == Rational(2 * sgn) * t.M.at(k, j));
                }
        }
    }

    TEST_CASE("profiles match adaptive quadrature away from t = 0") {
        for (int m = 2; m <= 3; ++m)
            for (int k = 0; k < m; ++k)
                for (int j = 0; j < m; ++j) {
                    ExpPolyProfile prof = poisson_profile(k, j, m);
                    int p;
                    int M;
                    int sgn;
                    if (j % 2 == 0 && k % 2 == 0) {
                        p = 0;
                        M = m - (j + k) / 2;
                        sgn = ((j + k) / 2 % 2 == 0) ? 1 : -1;
                    } else if (j % 2 == 1 && k % 2 == 1) {
                        p = 2;
                        M = m + 1 - (j + k) / 2;
                        sgn = ((j + k) / 2 % 2 == 0) ? -1 : 1;
                    } else {
                        p = 1;
                        M = m - (j + k - 1) / 2;
                        sgn = ((j + k - 1) / 2 % 2 == 0) ? 1 : -1;
                        if (k % 2 == 1) sgn = -sgn;
                    }
                    int msign = (m % 2 == 0) ? 1 : -1;
                    for (double t : {0.1, 0.5, 1.0, 2.0, 5.0}) {
                        double expect = prof.eval(t);
                        double tol = 1e-9 * std::max(1e-3, std::abs(expect));
                        double quad =
                            msign * sgn * oscillatory_kernel_integral(p, M, t, tol);
                        CHECK(std::abs(quad - expect) <= 2.0 * tol);
                    }
                }
    }

    TEST_CASE("alt boundary conditions: moments and H1 display") {
        CHECK(alt_bc_moment(0, 1) == Rational(1));  // a_0 = pi for m = 1
        // quadrature oracle for a_n / pi
        for (int m = 1; m <= 5; ++m)
            for (int n = 0; 2 * n < 2 * m - 1; ++n) {
                // zeta^{2n} reduction: expand (zeta^2)^n = ((1+zeta^2)-1)^n
                double val = 0.0;
                for (int i = 0; i <= n; ++i) {
                    double c = binomial(n, i).to_double() * ((n - i) % 2 == 0 ? 1.0 : -1.0);
                    val += c * oscillatory_kernel_integral(0, m - i, 0.0, 1e-12);
                }
                CHECK(val / M_PI ==
                      doctest::Approx(alt_bc_moment(n, m).to_double()).epsilon(1e-9));
            }

        AltBcSymbol s5 = alt_bc_symbol(5);
        // the displayed integer matrix is 2^{2(m-1)}/pi times H1
        ExactMatrix scaled(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                scaled.at(i, j) = s5.H1.at(i, j) * Rational::pow2(8);
        CHECK(scaled == ExactMatrix::from_rows(3, 3,
                                               {Rational(70), Rational(10), Rational(6),
                                                Rational(10), Rational(6), Rational(10),
                                                Rational(6), Rational(10), Rational(70)}));
        CHECK(s5.H2.rows() == 2);
        CHECK(s5.H2.at(0, 0) == alt_bc_moment(1, 5));

        // persymmetry a_n = a_{m-1-n}
        for (int m = 1; m <= 8; ++m)
            for (int n = 0; n <= m - 1 - n; ++n)
                CHECK(alt_bc_moment(n, m) == alt_bc_moment(m - 1 - n, m));

        CHECK_THROWS_AS(alt_bc_moment(1, 1), std::domain_error);
    }

    TEST_CASE("alt-bc Hankel blocks are totally positive (via exact dets)") {
        for (int m = 2; m <= 8; ++m) {
            AltBcSymbol s = alt_bc_symbol(m);
            // positive definiteness of H1 and its lower-left block certifies
            // TP for Hankel matrices; checked exactly on the rational parts
            const std::size_t n = s.H1.rows();
            for (std::size_t k = 1; k <= n; ++k) {
                std::vector<std::size_t> lead(k);
                for (std::size_t i = 0; i < k; ++i) lead[i] = i;
                CHECK(s.H1.minor(lead, lead).sign() > 0);
            }
        }
    }

    TEST_CASE("product operator symbol") {
        CHECK(product_operator_symbol(0, 0, 0.0, {1.0}) == doctest::Approx(0.5));
        CHECK(product_operator_symbol(0, 1, 3.0, {1.0, 2.0}) == 0.0);
        CHECK_THROWS_AS(product_operator_symbol(0, 0, 1.0, {1.0, 1.0}), std::domain_error);
        CHECK_THROWS_AS(product_operator_symbol(0, 0, 1.0, {-1.0}), std::domain_error);

        // divided-difference annihilation: for m = 3 points, (t^2 + x)^p with
        // p <= 1 is a polynomial of degree <= m - 2 in x, so the sum vanishes
        std::vector<double> r = {1.0, 1.5, 2.3};
        for (double t : {0.0, 0.7, 2.0})
            for (int pw = 0; pw <= 1; ++pw) {
                double s = 0.0;
                for (std::size_t l = 0; l < r.size(); ++l) {
                    double denom = 1.0;
                    for (std::size_t nu = 0; nu < r.size(); ++nu)
                        if (nu != l) denom *= r[nu] * r[nu] - r[l] * r[l];
                    s += std::pow(t * t + r[l] * r[l], pw) / denom;
                }
                CHECK(std::abs(s) < 1e-12);
            }

        // decay: v(2t)/v(t) -> 2^{j+k+1-2m} at large t
        for (int m : {2, 3}) {
            std::vector<double> rr;
            for (int i = 0; i < m; ++i) rr.push_back(1.0 + i);
            for (int j = 0; j < m; ++j)
                for (int k = 0; k < m; ++k) {
                    if ((j + k) % 2 == 1) continue;
                    double t = 900.0;
                    double ratio = product_operator_symbol(j, k, 2 * t, rr) /
                                   product_operator_symbol(j, k, t, rr);
                    CHECK(std::log2(std::abs(ratio)) ==
                          doctest::Approx(j + k + 1 - 2 * m).epsilon(0.02));
                }
        }
    }
}
