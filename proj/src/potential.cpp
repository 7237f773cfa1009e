#include "halfspace/potential.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>

#include "halfspace/multiplier.hpp"
#include "halfspace/quadrature.hpp"

namespace halfspace {

// ---------------------------------------------------------------------------
// RadialLogForm
// ---------------------------------------------------------------------------

RadialLogForm RadialLogForm::fundamental(int m, int d) {
    if (m < 1 || d < 1) throw std::domain_error("fundamental: bad order/dimension");
    Term t;
    t.coef = Rational(1);
    t.alpha = {0, 0, 0};
    t.rad_exp = 2 * m - d;
    t.log = (d % 2 == 0) && (2 * m >= d);
    return RadialLogForm({t});
}

void RadialLogForm::combine() {
    std::map<std::tuple<int, int, int, int, bool>, Rational> acc;
    for (const Term& t : terms_) {
        auto key = std::make_tuple(t.alpha[0], t.alpha[1], t.alpha[2], t.rad_exp, t.log);
        acc[key] += t.coef;
    }
    terms_.clear();
    for (auto& [key, c] : acc) {
        if (c.is_zero()) continue;
        Term t;
        t.alpha = {std::get<0>(key), std::get<1>(key), std::get<2>(key)};
        t.rad_exp = std::get<3>(key);
        t.log = std::get<4>(key);
        t.coef = c;
        terms_.push_back(t);
    }
}

RadialLogForm RadialLogForm::derivative(int axis, int dim) const {
    if (axis < 0 || axis >= dim) throw std::invalid_argument("derivative: axis out of range");
    std::vector<Term> out;
    for (const Term& t : terms_) {
        if (t.alpha[axis] > 0) {
            Term u = t;
            u.coef = t.coef * Rational(t.alpha[axis]);
            u.alpha[axis] -= 1;
            out.push_back(u);
        }
        if (t.rad_exp != 0) {
            Term u = t;
            u.coef = t.coef * Rational(t.rad_exp);
            u.alpha[axis] += 1;
            u.rad_exp -= 2;
            out.push_back(u);
        }
        if (t.log) {
            Term u = t;
            u.log = false;
            u.alpha[axis] += 1;
            u.rad_exp -= 2;
            out.push_back(u);
        }
    }
    return RadialLogForm(std::move(out));
}

RadialLogForm RadialLogForm::laplacian(int dim) const {
    std::vector<Term> out;
    for (int ax = 0; ax < dim; ++ax) {
        RadialLogForm dd = derivative(ax, dim).derivative(ax, dim);
        out.insert(out.end(), dd.terms_.begin(), dd.terms_.end());
    }
    return RadialLogForm(std::move(out));
}

RadialLogForm RadialLogForm::derivative_multi(const std::array<int, 3>& beta, int dim) const {
    RadialLogForm f = *this;
    for (int ax = 0; ax < 3; ++ax)
        for (int rep = 0; rep < beta[ax]; ++rep) f = f.derivative(ax, dim);
    return f;
}

double RadialLogForm::evaluate(const Point& x, int dim) const {
    double r2 = 0.0;
    for (int i = 0; i < dim; ++i) r2 += x[i] * x[i];
    if (r2 == 0.0) throw SingularityError("RadialLogForm: evaluation at the origin");
    const double r = std::sqrt(r2);
    const double lg = std::log(r);
    double total = 0.0;
    for (const Term& t : terms_) {
        double v = t.coef.to_double();
        for (int i = 0; i < dim; ++i)
            for (int k = 0; k < t.alpha[i]; ++k) v *= x[i];
        v *= std::pow(r, t.rad_exp);
        if (t.log) v *= lg;
        total += v;
    }
    return total;
}

int RadialLogForm::degree() const {
    if (terms_.empty()) return 0;
    const Term& t = terms_.front();
    return t.alpha[0] + t.alpha[1] + t.alpha[2] + t.rad_exp;
}

bool RadialLogForm::log_part_is_zero(int dim) const {
    // gather log terms; all radial exponents are even in the log case
    std::vector<Term> logs;
    int min_e = 0;
    for (const Term& t : terms_)
        if (t.log) {
            if (t.rad_exp % 2 != 0)
                throw std::logic_error("log_part_is_zero: odd radial power with log");
            logs.push_back(t);
            min_e = std::min(min_e, t.rad_exp);
        }
    if (logs.empty()) return true;
    const int K = (-min_e) / 2;
    // expand c x^alpha (x.x)^{(e+2K)/2} exactly into monomials
    std::map<std::array<int, 3>, Rational> poly;
    for (const Term& t : logs) {
        const int p = (t.rad_exp + 2 * K) / 2;
        // multinomial expansion of (x0^2 + ... + x_{dim-1}^2)^p
        std::vector<std::pair<std::array<int, 3>, Rational>> expansion;
        std::function<void(int, int, std::array<int, 3>, Rational)> rec =
            [&](int axis, int left, std::array<int, 3> exps, Rational coef) {
                if (axis == dim - 1) {
                    exps[axis] = 2 * left;
                    expansion.push_back({exps, coef});
                    return;
                }
                for (int use = 0; use <= left; ++use) {
                    std::array<int, 3> e2 = exps;
                    e2[axis] = 2 * use;
                    rec(axis + 1, left - use, e2, coef * binomial(left, use));
                }
            };
        rec(0, p, {0, 0, 0}, Rational(1));
        for (auto& [e, c] : expansion) {
            std::array<int, 3> total = e;
            for (int i = 0; i < 3; ++i) total[i] += t.alpha[i];
            poly[total] += t.coef * c;
        }
    }
    for (auto& [e, c] : poly)
        if (!c.is_zero()) return false;
    return true;
}

// ---------------------------------------------------------------------------
// phi, calibration
// ---------------------------------------------------------------------------

double phi(int m, int d, const Point& x, double C) {
    double r2 = 0.0;
    for (int i = 0; i < d; ++i) r2 += x[i] * x[i];
    if (r2 == 0.0) throw SingularityError("phi: evaluation at the origin");
    const double r = std::sqrt(r2);
    if (d % 2 == 0 && 2 * m >= d) return C * std::pow(r, 2 * m - d) * std::log(r);
    return C * std::pow(r, 2 * m - d);
}

namespace {

double surface_area(int d) {
    // |S^{d-1}|
    if (d == 1) return 2.0;
    if (d == 2) return 2.0 * M_PI;
    if (d == 3) return 4.0 * M_PI;
    double s = 2.0 * std::pow(M_PI, 0.5 * d) / std::tgamma(0.5 * d);
    return s;
}

// radial polynomial of Delta^m applied to e^{-r^2/2}, dimension d
std::vector<double> gaussian_radial_poly(int m, int d) {
    std::vector<double> p = {1.0};
    auto deriv = [](const std::vector<double>& q) {
        std::vector<double> r(q.size() > 1 ? q.size() - 1 : 1, 0.0);
        for (std::size_t i = 1; i < q.size(); ++i) r[i - 1] = q[i] * static_cast<double>(i);
        return r;
    };
    for (int it = 0; it < m; ++it) {
        std::vector<double> d1 = deriv(p), d2 = deriv(d1);
        // p'' + (d-1) p'/r - 2 r p' + (r^2 - d) p   (even polynomials only)
        std::vector<double> next(p.size() + 2, 0.0);
        auto add = [&](const std::vector<double>& q, int shift, double c) {
            for (std::size_t i = 0; i < q.size(); ++i) {
                if (q[i] == 0.0) continue;
                next[i + shift] += c * q[i];
            }
        };
        add(d2, 0, 1.0);
        // p'/r: valid because p is even, so d1 has only odd powers
        std::vector<double> d1_over_r(d1.size() > 0 ? d1.size() - 1 : 1, 0.0);
        for (std::size_t i = 1; i < d1.size(); ++i) d1_over_r[i - 1] = d1[i];
        if (!d1.empty() && d1.size() >= 1 && d1[0] != 0.0)
            throw std::logic_error("gaussian_radial_poly: odd polynomial appeared");
        add(d1_over_r, 0, static_cast<double>(d - 1));
        add(d1, 1, -2.0);
        add(p, 2, 1.0);
        add(p, 0, -static_cast<double>(d));
        p = std::move(next);
    }
    return p;
}

double eval_poly(const std::vector<double>& p, double r) {
    double v = 0.0;
    for (std::size_t i = p.size(); i-- > 0;) v = v * r + p[i];
    return v;
}

// integral over (0, inf) of phi_unit(r) q(r/sigma) e^{-r^2/(2 sigma^2)} r^{d-1},
// dyadic panels toward the origin to sit out the log kink
double radial_pairing(int m, int d, const std::vector<double>& q, double sigma, int refine) {
    auto f = [&](double r) {
        double base = std::pow(r, 2 * m - d);
        if (d % 2 == 0 && 2 * m >= d) base *= std::log(r);
        return base * eval_poly(q, r / sigma) * std::exp(-0.5 * r * r / (sigma * sigma)) *
               std::pow(r, d - 1);
    };
    const double rmax = 8.0 + 10.0 * sigma;
    double total = integrate_gl(f, 1.0, rmax, 32 * refine);
    double lo = 1.0;
    for (int level = 0; level < 60; ++level) {
        double next = lo * 0.5;
        total += integrate_gl(f, next, lo, 2 * refine);
        lo = next;
        if (std::abs(f(lo)) * lo < 1e-22) break;
    }
    return total;
}

}  // namespace

Calibration calibrate(int m, int d, double sigma) {
    // any m >= 1 works for the pairing integral (the half-space solver's
    // m > d/2 gate lives in solve_g); the Newtonian m=1, d=3 case is the
    // canonical cross-check here
    if (m < 1 || d < 1) throw std::domain_error("calibrate: bad order/dimension");
    std::vector<double> q = gaussian_radial_poly(m, d);
    const double s = surface_area(d);
    // sigma-scaled probe: Delta^m gamma_sigma (r) = sigma^{-2m} (Delta^m gamma)(r/sigma)
    double coarse = s * std::pow(sigma, -2.0 * m) * radial_pairing(m, d, q, sigma, 1);
    double fine = s * std::pow(sigma, -2.0 * m) * radial_pairing(m, d, q, sigma, 2);
    if (fine == 0.0) throw AccuracyError("calibrate: pairing integral vanished");
    Calibration c;
    c.C = 1.0 / fine;  // gamma(0) = 1
    c.error_estimate = std::abs(1.0 / fine - 1.0 / coarse);
    return c;
}

double dphi(int m, int d, const std::array<int, 3>& beta, const Point& x) {
    return dphi_structure(m, d, beta).evaluate(x, d);
}

RadialLogForm dphi_structure(int m, int d, const std::array<int, 3>& beta) {
    return RadialLogForm::fundamental(m, d).derivative_multi(beta, d);
}

RadialLogForm kernel_structure(int j, int m, int d) {
    RadialLogForm f = RadialLogForm::fundamental(m, d);
    for (int i = 0; i < j / 2; ++i) f = f.laplacian(d);
    if (j % 2 == 1) f = f.derivative(d - 1, d);
    return f;
}

double kernel_k(int j, int m, int d, const Point& x, const Point& yprime, double C) {
    static std::map<std::tuple<int, int, int>, RadialLogForm> cache;
    static std::mutex mu;
    const RadialLogForm* form;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto key = std::make_tuple(j, m, d);
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, kernel_structure(j, m, d)).first;
        form = &it->second;
    }
    Point rel{};
    for (int i = 0; i + 1 < d; ++i) rel[i] = x[i] - yprime[i];
    rel[d - 1] = x[d - 1];
    return C * form->evaluate(rel, d);
}

QuadratureValue quadrature_Tg(const DensityData& g, const Point& x, int m, int d, double C) {
    const int mm = g.order();
    if (mm != m) throw std::invalid_argument("quadrature_Tg: order mismatch");
    g.validate_geometry();
    const GridField& like = g.g[0];
    if (like.dim() != d - 1) throw std::invalid_argument("quadrature_Tg: field dim must be d-1");
    if (x[d - 1] == 0.0) throw std::domain_error("quadrature_Tg: point on the boundary");

    auto sum_with_stride = [&](std::size_t stride) {
        double cell = like.spacing() * static_cast<double>(stride);
        if (like.dim() == 2) cell *= like.spacing() * static_cast<double>(stride);
        double acc = 0.0;
        for (int j = 0; j < mm; ++j) {
            const GridField& f = g.g[j];
            if (like.dim() == 1) {
                for (std::size_t i = 0; i < f.n(); i += stride) {
                    double gv = f.at(i);
                    if (gv == 0.0) continue;
                    acc += gv * kernel_k(j, m, d, x, Point{f.coord(i), 0.0, 0.0}, C);
                }
            } else {
                for (std::size_t iy = 0; iy < f.n(); iy += stride)
                    for (std::size_t ix = 0; ix < f.n(); ix += stride) {
                        double gv = f.at(ix, iy);
                        if (gv == 0.0) continue;
                        acc += gv * kernel_k(j, m, d, x, Point{f.coord(ix), f.coord(iy), 0.0}, C);
                    }
            }
        }
        return acc * cell;
    };

    QuadratureValue qv;
    qv.value = sum_with_stride(1);
    qv.error_estimate = std::abs(qv.value - sum_with_stride(2));
    return qv;
}

// ---------------------------------------------------------------------------
// moment-preserving truncation
// ---------------------------------------------------------------------------

namespace {

double smooth_step(double t) {  // e^{-1/t} glue
    if (t <= 0.0) return 0.0;
    return std::exp(-1.0 / t);
}

// 1 for r <= 1, 0 for r >= 2, smooth in between
double bump_profile(double r) {
    double a = smooth_step(2.0 - r), b = smooth_step(r - 1.0);
    return a / (a + b);
}

// supported in |x| <= 1/2, positive inside
double dual_window(double r) { return r < 0.5 ? std::exp(-1.0 / (1.0 - 4.0 * r * r)) : 0.0; }

struct MonomialBasis {
    std::vector<std::array<int, 2>> exps;  // per dim <= 2
};

MonomialBasis monomials_up_to(int L, int dim) {
    MonomialBasis b;
    for (int total = 0; total <= L; ++total)
        for (int px = total; px >= 0; --px) {
            int py = total - px;
            if (dim == 1 && py != 0) continue;
            b.exps.push_back({dim == 1 ? total : px, dim == 1 ? 0 : py});
            if (dim == 1) break;
        }
    return b;
}

// dual coefficient matrix W: Phi_beta = sum_gamma W[beta][gamma] x^gamma B(x)
struct DualFamily {
    MonomialBasis basis;
    std::vector<std::vector<double>> W;
};

DualFamily build_duals(int L, int dim) {
    DualFamily fam;
    fam.basis = monomials_up_to(L, dim);
    const std::size_t nb = fam.basis.exps.size();
    // Gram G[g][b] = integral x^{g+b} B(x) over the unit-scale window
    std::vector<std::vector<double>> G(nb, std::vector<double>(nb, 0.0));
    auto moment = [&](int px, int py) {
        if (dim == 1)
            return integrate_gl([&](double x) { return std::pow(x, px) * dual_window(std::abs(x)); },
                                -0.5, 0.5, 64);
        return integrate_gl(
            [&](double x) {
                return std::pow(x, px) *
                       integrate_gl(
                           [&](double y) {
                               return std::pow(y, py) * dual_window(std::hypot(x, y));
                           },
                           -0.5, 0.5, 32);
            },
            -0.5, 0.5, 32);
    };
    for (std::size_t a = 0; a < nb; ++a)
        for (std::size_t b = 0; b < nb; ++b)
            G[a][b] = moment(fam.basis.exps[a][0] + fam.basis.exps[b][0],
                             fam.basis.exps[a][1] + fam.basis.exps[b][1]);
    // invert G (tiny, partial pivoting)
    std::vector<std::vector<double>> inv(nb, std::vector<double>(nb, 0.0));
    for (std::size_t i = 0; i < nb; ++i) inv[i][i] = 1.0;
    for (std::size_t c = 0; c < nb; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < nb; ++r)
            if (std::abs(G[r][c]) > std::abs(G[piv][c])) piv = r;
        std::swap(G[c], G[piv]);
        std::swap(inv[c], inv[piv]);
        double pv = G[c][c];
        for (std::size_t k = 0; k < nb; ++k) {
            G[c][k] /= pv;
            inv[c][k] /= pv;
        }
        for (std::size_t r = 0; r < nb; ++r) {
            if (r == c || G[r][c] == 0.0) continue;
            double f = G[r][c];
            for (std::size_t k = 0; k < nb; ++k) {
                G[r][k] -= f * G[c][k];
                inv[r][k] -= f * inv[c][k];
            }
        }
    }
    fam.W = std::move(inv);
    // the defining property, by quadrature: integral of x^gamma Phi_beta = delta
    for (std::size_t beta = 0; beta < nb; ++beta)
        for (std::size_t gamma = 0; gamma < nb; ++gamma) {
            double acc = 0.0;
            for (std::size_t b = 0; b < nb; ++b)
                acc += fam.W[beta][b] * moment(fam.basis.exps[gamma][0] + fam.basis.exps[b][0],
                                               fam.basis.exps[gamma][1] + fam.basis.exps[b][1]);
            if (std::abs(acc - (beta == gamma ? 1.0 : 0.0)) > 1e-10)
                throw AccuracyError("build_duals: dual family failed its moment check");
        }
    return fam;
}

double discrete_moment(const GridField& f, int px, int py) {
    double cell = f.spacing();
    if (f.dim() == 2) cell *= f.spacing();
    double acc = 0.0;
    if (f.dim() == 1) {
        for (std::size_t i = 0; i < f.n(); ++i) acc += std::pow(f.coord(i), px) * f.at(i);
    } else {
        for (std::size_t iy = 0; iy < f.n(); ++iy)
            for (std::size_t ix = 0; ix < f.n(); ++ix)
                acc += std::pow(f.coord(ix), px) * std::pow(f.coord(iy), py) * f.at(ix, iy);
    }
    return acc * cell;
}

}  // namespace

TruncationResult moment_truncation(const GridField& f, double R, int L) {
    if (!(R > 0.0)) throw std::invalid_argument("moment_truncation: R must be positive");
    if (L < 0) throw std::invalid_argument("moment_truncation: L must be >= 0");
    const int dim = f.dim();
    DualFamily fam = build_duals(L, dim);

    // precondition: f itself carries (numerically) vanishing moments
    {
        std::vector<std::string> bad;
        for (auto& e : fam.basis.exps) {
            double mom = discrete_moment(f, e[0], e[1]);
            double scale = std::max(1.0, f.max_abs()) *
                           std::pow(f.extent(), e[0] + e[1] + dim);
            if (std::abs(mom) > 1e-6 * scale)
                bad.push_back("x^(" + std::to_string(e[0]) + "," + std::to_string(e[1]) +
                              ") -> " + std::to_string(mom));
        }
        if (!bad.empty()) {
            std::string msg = "moment_truncation: input moments not vanishing:";
            for (auto& s : bad) msg += " " + s;
            throw PreconditionError(msg);
        }
    }

    const double s = 0.5 * R;  // dual scale; windows live in |x| <= R/4
    GridField compact(dim, f.extent(), f.n());
    GridField fb(dim, f.extent(), f.n());
    auto cutoff = [&](double r) { return bump_profile(2.0 * r / R); };
    if (dim == 1) {
        for (std::size_t i = 0; i < f.n(); ++i) {
            double x = f.coord(i);
            double chi = cutoff(std::abs(x));
            compact.at(i) = chi * f.at(i);
            fb.at(i) = (1.0 - chi) * f.at(i);
        }
    } else {
        for (std::size_t iy = 0; iy < f.n(); ++iy)
            for (std::size_t ix = 0; ix < f.n(); ++ix) {
                double chi = cutoff(std::hypot(f.coord(ix), f.coord(iy)));
                compact.at(ix, iy) = chi * f.at(ix, iy);
                fb.at(ix, iy) = (1.0 - chi) * f.at(ix, iy);
            }
    }

    // c_beta = s^{-(N+|beta|)} * moment_beta(f_b); add sum c_beta Phi_beta(x/s)
    const std::size_t nb = fam.basis.exps.size();
    std::vector<double> c(nb);
    for (std::size_t b = 0; b < nb; ++b) {
        auto e = fam.basis.exps[b];
        c[b] = std::pow(s, -(dim + e[0] + e[1])) * discrete_moment(fb, e[0], e[1]);
    }
    auto add_duals = [&](GridField& target, double sign) {
        for (std::size_t b = 0; b < nb; ++b) {
            if (c[b] == 0.0) continue;
            for (std::size_t idx = 0; idx < target.size(); ++idx) {
                double x, y = 0.0;
                if (dim == 1) {
                    x = target.coord(idx);
                } else {
                    x = target.coord(idx % target.n());
                    y = target.coord(idx / target.n());
                }
                double r = dim == 1 ? std::abs(x / s) : std::hypot(x / s, y / s);
                if (r >= 0.5) continue;
                double w = dual_window(r);
                double poly = 0.0;
                for (std::size_t go = 0; go < nb; ++go) {
                    auto ge = fam.basis.exps[go];
                    poly += fam.W[b][go] * std::pow(x / s, ge[0]) *
                            (dim == 2 ? std::pow(y / s, ge[1]) : 1.0);
                }
                target.samples()[idx] += sign * c[b] * poly * w;
            }
        }
    };
    add_duals(compact, 1.0);

    TruncationResult out{std::move(compact), GridField(dim, f.extent(), f.n()), {}};
    for (std::size_t i = 0; i < f.size(); ++i)
        out.remainder.samples()[i] = f.samples()[i] - out.compact.samples()[i];
    for (auto& e : fam.basis.exps)
        out.moment_residuals.push_back(std::abs(discrete_moment(out.remainder, e[0], e[1])));
    return out;
}

DyadicDecomposition dyadic_decompose(const GridField& f, int levels, int L) {
    DyadicDecomposition out;
    GridField tilde = f;
    for (int l = 0; l < levels; ++l) {
        TruncationResult t = moment_truncation(tilde, std::pow(2.0, l), L);
        out.pieces.push_back(std::move(t.compact));
        tilde = std::move(t.remainder);
    }
    out.tail = std::move(tilde);
    return out;
}

DecayFit riesz_decay_study(const GridField& f, int deriv_order, double r_lo, double r_hi) {
    GridField rf = apply_multiplier(
        f,
        [deriv_order](double x, double y) {
            double r = std::hypot(x, y);
            std::complex<double> riesz(0.0, x / r);
            std::complex<double> dpow = std::pow(std::complex<double>(0.0, x), deriv_order);
            return riesz * dpow;
        },
        ZeroMode::SetZero);
    DecayFit fit;
    for (double r = r_lo; 2.0 * r <= r_hi * 2.0 && 2.0 * r <= f.extent(); r *= 2.0) {
        double mx = 0.0;
        if (f.dim() == 1) {
            for (std::size_t i = 0; i < f.n(); ++i) {
                double x = std::abs(rf.coord(i));
                if (x >= r && x < 2.0 * r) mx = std::max(mx, std::abs(rf.at(i)));
            }
        } else {
            for (std::size_t iy = 0; iy < f.n(); ++iy)
                for (std::size_t ix = 0; ix < f.n(); ++ix) {
                    double x = std::hypot(rf.coord(ix), rf.coord(iy));
                    if (x >= r && x < 2.0 * r) mx = std::max(mx, std::abs(rf.at(ix, iy)));
                }
        }
        fit.annuli.push_back(1.5 * r);
        fit.sup_norms.push_back(mx);
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (std::size_t i = 0; i < fit.annuli.size(); ++i) {
        if (!(fit.sup_norms[i] > 0.0)) continue;
        double x = std::log(fit.annuli[i]), y = std::log(fit.sup_norms[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
    }
    if (cnt < 2) throw AccuracyError("riesz_decay_study: not enough annuli with signal");
    fit.slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    return fit;
}

}  // namespace halfspace
