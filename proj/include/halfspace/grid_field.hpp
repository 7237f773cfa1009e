#ifndef HALFSPACE_GRID_FIELD_HPP
#define HALFSPACE_GRID_FIELD_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace halfspace {

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Real samples on a uniform periodic grid over [-L, L)^dim, dim in {1, 2},
/// n a power of two per axis, spacing 2L/n. Sample i lives at -L + i * 2L/n.
class GridField {
  public:
    GridField() : dim_(1), extent_(0), n_(0) {}
    GridField(int dim, double extent, std::size_t n);

    int dim() const { return dim_; }
    double extent() const { return extent_; }
    std::size_t n() const { return n_; }
    double spacing() const { return 2.0 * extent_ / static_cast<double>(n_); }
    std::size_t size() const { return samples_.size(); }

    double& at(std::size_t i) { return samples_[i]; }
    double at(std::size_t i) const { return samples_[i]; }
    double& at(std::size_t ix, std::size_t iy) { return samples_[iy * n_ + ix]; }
    double at(std::size_t ix, std::size_t iy) const { return samples_[iy * n_ + ix]; }

    std::vector<double>& samples() { return samples_; }
    const std::vector<double>& samples() const { return samples_; }

    /// Coordinate of sample index along one axis.
    double coord(std::size_t i) const { return -extent_ + spacing() * static_cast<double>(i); }

    bool same_geometry(const GridField& o) const {
        return dim_ == o.dim_ && extent_ == o.extent_ && n_ == o.n_;
    }

    double l2_norm() const;
    double max_abs() const;
    /// Largest |sample| on the outer 5% band of the domain; data meant for
    /// multiplier application should make this negligible.
    double boundary_max() const;
    double mean() const;

    GridField& operator+=(const GridField& o);
    GridField& operator-=(const GridField& o);
    GridField& operator*=(double s);

    /// Flat little-endian float64 payload plus a JSON sidecar {dim,extent,n}.
    void write(const std::string& data_path, const std::string& sidecar_path) const;
    static GridField read(const std::string& data_path, const std::string& sidecar_path);

  private:
    int dim_;
    double extent_;
    std::size_t n_;
    std::vector<double> samples_;
};

/// Dirichlet traces h_0..h_{m-1} on a shared grid.
struct DirichletData {
    std::vector<GridField> h;
    int order() const { return static_cast<int>(h.size()); }
    void validate_geometry() const;
};

/// Boundary-layer densities g_0..g_{m-1} on a shared grid.
struct DensityData {
    std::vector<GridField> g;
    int order() const { return static_cast<int>(g.size()); }
    void validate_geometry() const;
};

}  // namespace halfspace

#endif
