#include "halfspace/solver.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "halfspace/fft.hpp"
#include "halfspace/symbol.hpp"

namespace halfspace {

namespace {

// Frequency-domain copies of a family of fields.
std::vector<std::vector<std::complex<double>>> spectra(const std::vector<GridField>& fs) {
    std::vector<std::vector<std::complex<double>>> out;
    out.reserve(fs.size());
    for (const GridField& f : fs) {
        std::vector<std::complex<double>> a(f.samples().begin(), f.samples().end());
        fft_forward(a, f.dim(), f.n());
        out.push_back(std::move(a));
    }
    return out;
}

GridField from_spectrum(std::vector<std::complex<double>> a, const GridField& like) {
    fft_inverse(a, like.dim(), like.n());
    GridField out(like.dim(), like.extent(), like.n());
    for (std::size_t i = 0; i < a.size(); ++i) out.samples()[i] = a[i].real();
    return out;
}

// Iterate the frequency lattice, handing |xi| and the flat index to fn;
// the zero mode is skipped (cleared by the caller).
template <typename F>
void for_lattice(const GridField& like, F&& fn) {
    const std::size_t n = like.n();
    const double dxi = M_PI / like.extent();
    if (like.dim() == 1) {
        for (std::size_t k = 1; k < n; ++k)
            fn(std::abs(dxi * static_cast<double>(fft_signed_index(k, n))), k);
        return;
    }
    for (std::size_t ky = 0; ky < n; ++ky)
        for (std::size_t kx = 0; kx < n; ++kx) {
            if (kx == 0 && ky == 0) continue;
            double x = dxi * static_cast<double>(fft_signed_index(kx, n));
            double y = dxi * static_cast<double>(fft_signed_index(ky, n));
            fn(std::hypot(x, y), ky * n + kx);
        }
}

const ExactMatrix& cached_M(int m) {
    static std::mutex mu;
    static std::map<int, ExactMatrix> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it == cache.end()) it = cache.emplace(m, build_M(m).M).first;
    return it->second;
}

const ExactMatrix& cached_Minv(int m) {
    static std::mutex mu;
    static std::map<int, ExactMatrix> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it == cache.end()) it = cache.emplace(m, invert_M(m)).first;
    return it->second;
}

const ExpPolyProfile& cached_profile(int m, int k, int j) {
    static std::mutex mu;
    static std::map<std::tuple<int, int, int>, ExpPolyProfile> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(m, k, j);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, poisson_profile(k, j, m)).first;
    return it->second;
}

int sign_pow(long e) { return (e % 2 == 0) ? 1 : -1; }

}  // namespace

DensityData solve_g(const DirichletData& h, int d) {
    const int m = h.order();
    if (m < 1) throw std::invalid_argument("solve_g: empty Dirichlet data");
    if (2 * m <= d) throw std::domain_error("solve_g: requires m > d/2");
    h.validate_geometry();
    const GridField& like = h.h[0];
    if (like.dim() != d - 1) throw std::invalid_argument("solve_g: field dim must be d-1");

    auto hhat = spectra(h.h);
    const ExactMatrix& minv = cached_Minv(m);
    std::vector<double> minv_d(static_cast<std::size_t>(m) * m);
    for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k)
            minv_d[static_cast<std::size_t>(j) * m + k] = minv.at(j, k).to_double();

    DensityData out;
    out.g.reserve(m);
    for (int j = 0; j < m; ++j) {
        std::vector<std::complex<double>> acc(hhat[0].size(), 0.0);
        for_lattice(like, [&](double xi, std::size_t idx) {
            std::complex<double> s = 0.0;
            for (int k = (j % 2); k < m; k += 2) {
                const double c = minv_d[static_cast<std::size_t>(j) * m + k];
                if (c == 0.0) continue;
                const double power = std::pow(xi, 2 * m - j - k - 1);
                s += sign_pow(m - (j + k) / 2) * c * power * hhat[k][idx];
            }
            acc[idx] = s;
        });
        out.g.push_back(from_spectrum(std::move(acc), like));
    }
    return out;
}

DirichletData forward_h(const DensityData& g, int d) {
    const int m = g.order();
    if (m < 1) throw std::invalid_argument("forward_h: empty density data");
    g.validate_geometry();
    const GridField& like = g.g[0];
    if (like.dim() != d - 1) throw std::invalid_argument("forward_h: field dim must be d-1");

    auto ghat = spectra(g.g);
    const ExactMatrix& M = cached_M(m);
    std::vector<double> m_d(static_cast<std::size_t>(m) * m);
    for (int k = 0; k < m; ++k)
        for (int j = 0; j < m; ++j)
            m_d[static_cast<std::size_t>(k) * m + j] = M.at(k, j).to_double();

    DirichletData out;
    out.h.reserve(m);
    for (int k = 0; k < m; ++k) {
        std::vector<std::complex<double>> acc(ghat[0].size(), 0.0);
        for_lattice(like, [&](double xi, std::size_t idx) {
            std::complex<double> s = 0.0;
            for (int j = (k % 2); j < m; j += 2) {
                const double c = m_d[static_cast<std::size_t>(k) * m + j];
                if (c == 0.0) continue;
                const double power = std::pow(xi, j + k + 1 - 2 * m);
                s += sign_pow((j + k) / 2 - m) * c * power * ghat[j][idx];
            }
            acc[idx] = s;
        });
        out.h.push_back(from_spectrum(std::move(acc), like));
    }
    return out;
}

GridField extend(const DensityData& g, double xd, int d, int trace) {
    const int m = g.order();
    if (m < 1) throw std::invalid_argument("extend: empty density data");
    if (xd < 0.0) throw std::domain_error("extend: height must be >= 0");
    if (trace < 0 || trace >= m) throw std::invalid_argument("extend: trace order out of range");
    g.validate_geometry();
    const GridField& like = g.g[0];
    if (like.dim() != d - 1) throw std::invalid_argument("extend: field dim must be d-1");

    auto ghat = spectra(g.g);
    std::vector<std::complex<double>> acc(ghat[0].size(), 0.0);
    const double inv2pi = 1.0 / (2.0 * M_PI);
    for (int j = 0; j < m; ++j) {
        const ExpPolyProfile& prof = cached_profile(m, trace, j);
        if (prof.is_zero()) continue;
        for_lattice(like, [&](double xi, std::size_t idx) {
            const double power = std::pow(xi, trace + j + 1 - 2 * m);
            acc[idx] += inv2pi * prof.eval(xi * xd) * power * ghat[j][idx];
        });
    }
    return from_spectrum(std::move(acc), like);
}

std::vector<double> fd_weights(double x0, const std::vector<double>& nodes, int order) {
    // Fornberg's recursion for the weights of d^order/dx^order at x0.
    const int nn = static_cast<int>(nodes.size());
    if (order < 0 || nn < order + 1)
        throw std::invalid_argument("fd_weights: need at least order+1 nodes");
    std::vector<std::vector<double>> c(nn, std::vector<double>(order + 1, 0.0));
    double c1 = 1.0;
    c[0][0] = 1.0;
    for (int i = 1; i < nn; ++i) {
        double c2 = 1.0;
        const double xi = nodes[i];
        for (int j = 0; j < i; ++j) {
            const double xj = nodes[j];
            const double c3 = xi - xj;
            c2 *= c3;
            if (j == i - 1) {
                for (int k = std::min(i, order); k >= 1; --k)
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - (nodes[i - 1] - x0) * c[i - 1][k]) / c2;
                c[i][0] = -c1 * (nodes[i - 1] - x0) * c[i - 1][0] / c2;
            }
            for (int k = std::min(i, order); k >= 1; --k)
                c[j][k] = ((xi - x0) * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = (xi - x0) * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(nn);
    for (int i = 0; i < nn; ++i) w[i] = c[i][order];
    return w;
}

ResidualReport polyharmonic_residual(const DensityData& g, const std::vector<double>& heights,
                                     int d) {
    const int m = g.order();
    if (static_cast<int>(heights.size()) < 2 * m + 1)
        throw DimensionError("polyharmonic_residual: need at least 2m+1 heights");
    for (std::size_t i = 1; i < heights.size(); ++i)
        if (!(heights[i] > heights[i - 1]))
            throw std::invalid_argument("polyharmonic_residual: heights must be ascending");
    g.validate_geometry();
    const GridField& like = g.g[0];

    // Delta^m = sum_i C(m, i) Delta_h^{m-i} d^{2i}/dxd^{2i}; evaluate at the
    // central height with FD weights in xd and spectral powers horizontally.
    const std::size_t mid = heights.size() / 2;
    const double x0 = heights[mid];

    std::vector<GridField> slices;
    slices.reserve(heights.size());
    for (double hgt : heights) slices.push_back(extend(g, hgt, d));

    GridField residual(like.dim(), like.extent(), like.n());
    GridField scale_field(like.dim(), like.extent(), like.n());
    for (int i = 0; i <= m; ++i) {
        std::vector<double> w = fd_weights(x0, heights, 2 * i);
        GridField vertical(like.dim(), like.extent(), like.n());
        for (std::size_t s = 0; s < slices.size(); ++s) {
            if (w[s] == 0.0) continue;
            GridField term = slices[s];
            term *= w[s];
            vertical += term;
        }
        GridField horizontal =
            (m - i == 0) ? vertical : fractional_op(vertical, FractionalKind::lap_power(m - i));
        horizontal *= binomial(m, i).to_double();
        residual += horizontal;
        for (std::size_t idx = 0; idx < scale_field.size(); ++idx)
            scale_field.samples()[idx] =
                std::max(scale_field.samples()[idx], std::abs(horizontal.samples()[idx]));
    }

    ResidualReport r;
    r.residual = residual.max_abs();
    r.scale = std::max(scale_field.max_abs(), 1e-300);
    r.normalized = r.residual / r.scale;
    return r;
}

namespace {

// least-squares slope of log|values| against log(radii), ignoring zeros
double fit_loglog_slope(const std::vector<double>& radii, const std::vector<double>& values) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(values[i] > 0.0) || !(radii[i] > 0.0)) continue;
        double x = std::log(radii[i]), y = std::log(values[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
    }
    if (cnt < 2) return 0.0;
    return (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
}

}  // namespace

ValidationReport validate(const DirichletData& h, int d) {
    const int m = h.order();
    h.validate_geometry();
    const GridField& like = h.h[0];
    ValidationReport rep;

    for (int k = 0; k < m; ++k) {
        const GridField& f = h.h[k];
        rep.boundary_max.push_back(f.boundary_max());

        // windowed tail decay: max |f| on dyadic annuli in x
        std::vector<double> radii, vals;
        for (double r = like.extent() / 64.0; r * 2.0 <= like.extent(); r *= 2.0) {
            double mx = 0.0;
            if (like.dim() == 1) {
                for (std::size_t i = 0; i < f.n(); ++i) {
                    double x = std::abs(f.coord(i));
                    if (x >= r && x < 2.0 * r) mx = std::max(mx, std::abs(f.at(i)));
                }
            } else {
                for (std::size_t iy = 0; iy < f.n(); ++iy)
                    for (std::size_t ix = 0; ix < f.n(); ++ix) {
                        double x = std::hypot(f.coord(ix), f.coord(iy));
                        if (x >= r && x < 2.0 * r) mx = std::max(mx, std::abs(f.at(ix, iy)));
                    }
            }
            radii.push_back(1.5 * r);
            vals.push_back(mx);
        }
        rep.tail_decay.push_back(fit_loglog_slope(radii, vals));

        // spectral decay: max |f^| on dyadic shells in |xi|
        std::vector<std::complex<double>> a(f.samples().begin(), f.samples().end());
        fft_forward(a, f.dim(), f.n());
        const double dxi = M_PI / f.extent();
        const double ximax = dxi * static_cast<double>(f.n() / 2);
        std::vector<double> sr, sv;
        for (double r = 8.0 * dxi; 2.0 * r <= ximax; r *= 2.0) {
            double mx = 0.0;
            for_lattice(like, [&](double xi, std::size_t idx) {
                if (xi >= r && xi < 2.0 * r) mx = std::max(mx, std::abs(a[idx]));
            });
            sr.push_back(1.5 * r);
            sv.push_back(mx);
        }
        rep.spectral_decay.push_back(fit_loglog_slope(sr, sv));
    }

    // moment rows of the compatibility fields
    //   F_j = sum_k (M^-1)_{jk} Delta^{m-1-(j+k)/2} h_k
    const ExactMatrix& minv = cached_Minv(m);
    const double cell = (like.dim() == 1) ? like.spacing() : like.spacing() * like.spacing();
    for (int j = 0; j < m; ++j) {
        if (2 * m - j - d < 0) continue;  // no condition requested at this index
        GridField fj(like.dim(), like.extent(), like.n());
        for (int k = (j % 2); k < m; k += 2) {
            double c = minv.at(j, k).to_double();
            if (c == 0.0) continue;
            GridField term = fractional_op(h.h[k], FractionalKind::lap_power(m - 1 - (j + k) / 2));
            term *= c;
            fj += term;
        }
        const int deg_text = 2 * m - j - d;
        for (int deg = 0; deg <= deg_text; ++deg) {
            // probe all monomials of this total degree
            for (int ax = 0; ax <= (like.dim() == 2 ? deg : 0); ++ax) {
                int px = (like.dim() == 2) ? ax : deg;
                int py = deg - px;
                if (like.dim() == 1 && py != 0) continue;
                double mom = 0.0, scl = 0.0;
                if (like.dim() == 1) {
                    for (std::size_t i = 0; i < fj.n(); ++i) {
                        double x = fj.coord(i);
                        double v = std::pow(x, px) * fj.at(i);
                        mom += v;
                        scl = std::max(scl, std::abs(v));
                    }
                } else {
                    for (std::size_t iy = 0; iy < fj.n(); ++iy)
                        for (std::size_t ix = 0; ix < fj.n(); ++ix) {
                            double v = std::pow(fj.coord(ix), px) * std::pow(fj.coord(iy), py) *
                                       fj.at(ix, iy);
                            mom += v;
                            scl = std::max(scl, std::abs(v));
                        }
                }
                ValidationMomentRow row;
                row.j = j;
                row.degree = deg;
                row.value = mom * cell;
                row.scale = scl;
                row.required_weak = deg <= 2 * m - j - d - 1;
                row.required_text = true;
                rep.moments.push_back(row);
            }
        }
    }
    return rep;
}

}  // namespace halfspace
