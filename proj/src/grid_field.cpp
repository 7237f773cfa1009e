#include "halfspace/grid_field.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "json.hpp"

namespace halfspace {

namespace {
bool power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }
}

GridField::GridField(int dim, double extent, std::size_t n)
    : dim_(dim), extent_(extent), n_(n) {
    if (dim != 1 && dim != 2) throw std::invalid_argument("GridField: dim must be 1 or 2");
    if (!(extent > 0.0)) throw std::invalid_argument("GridField: extent must be positive");
    if (!power_of_two(n)) throw std::invalid_argument("GridField: n must be a power of two");
    samples_.assign(dim == 1 ? n : n * n, 0.0);
}

double GridField::l2_norm() const {
    double s = 0.0;
    for (double v : samples_) s += v * v;
    // grid measure, so norms are resolution-independent
    double cell = spacing();
    if (dim_ == 2) cell *= spacing();
    return std::sqrt(s * cell);
}

double GridField::max_abs() const {
    double s = 0.0;
    for (double v : samples_) s = std::max(s, std::abs(v));
    return s;
}

double GridField::boundary_max() const {
    const std::size_t band = std::max<std::size_t>(1, n_ / 20);
    double s = 0.0;
    if (dim_ == 1) {
        for (std::size_t i = 0; i < n_; ++i)
            if (i < band || i + band >= n_) s = std::max(s, std::abs(samples_[i]));
        return s;
    }
    for (std::size_t iy = 0; iy < n_; ++iy)
        for (std::size_t ix = 0; ix < n_; ++ix)
            if (ix < band || ix + band >= n_ || iy < band || iy + band >= n_)
                s = std::max(s, std::abs(at(ix, iy)));
    return s;
}

double GridField::mean() const {
    double s = 0.0;
    for (double v : samples_) s += v;
    return s / static_cast<double>(samples_.size());
}

GridField& GridField::operator+=(const GridField& o) {
    if (!same_geometry(o)) throw std::invalid_argument("GridField: geometry mismatch");
    for (std::size_t i = 0; i < samples_.size(); ++i) samples_[i] += o.samples_[i];
    return *this;
}

GridField& GridField::operator-=(const GridField& o) {
    if (!same_geometry(o)) throw std::invalid_argument("GridField: geometry mismatch");
    for (std::size_t i = 0; i < samples_.size(); ++i) samples_[i] -= o.samples_[i];
    return *this;
}

GridField& GridField::operator*=(double s) {
    for (double& v : samples_) v *= s;
    return *this;
}

void GridField::write(const std::string& data_path, const std::string& sidecar_path) const {
    std::ofstream out(data_path, std::ios::binary);
    if (!out) throw std::runtime_error("GridField::write: cannot open " + data_path);
    static_assert(sizeof(double) == 8);
    // little-endian layout; this is the native layout everywhere we run
    out.write(reinterpret_cast<const char*>(samples_.data()),
              static_cast<std::streamsize>(samples_.size() * sizeof(double)));
    nlohmann::json j;
    j["dim"] = dim_;
    j["extent"] = extent_;
    j["n"] = n_;
    std::ofstream side(sidecar_path);
    if (!side) throw std::runtime_error("GridField::write: cannot open " + sidecar_path);
    side << j.dump(2) << "\n";
}

GridField GridField::read(const std::string& data_path, const std::string& sidecar_path) {
    std::ifstream side(sidecar_path);
    if (!side) throw std::runtime_error("GridField::read: cannot open " + sidecar_path);
    nlohmann::json j;
    side >> j;
    GridField f(j.at("dim").get<int>(), j.at("extent").get<double>(),
                j.at("n").get<std::size_t>());
    std::ifstream in(data_path, std::ios::binary);
    if (!in) throw std::runtime_error("GridField::read: cannot open " + data_path);
    in.read(reinterpret_cast<char*>(f.samples_.data()),
            static_cast<std::streamsize>(f.samples_.size() * sizeof(double)));
    if (static_cast<std::size_t>(in.gcount()) != f.samples_.size() * sizeof(double))
        throw std::runtime_error("GridField::read: short payload in " + data_path);
    return f;
}

void DirichletData::validate_geometry() const {
    for (std::size_t k = 1; k < h.size(); ++k)
        if (!h[k].same_geometry(h[0]))
            throw std::invalid_argument("DirichletData: fields disagree on geometry");
}

void DensityData::validate_geometry() const {
    for (std::size_t k = 1; k < g.size(); ++k)
        if (!g[k].same_geometry(g[0]))
            throw std::invalid_argument("DensityData: fields disagree on geometry");
}

}  // namespace halfspace
