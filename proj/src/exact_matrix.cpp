#include "halfspace/exact_matrix.hpp"

#include <sstream>

#include "json.hpp"

namespace halfspace {

ExactMatrix ExactMatrix::identity(std::size_t n) {
    ExactMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Rational(1);
    return m;
}

ExactMatrix ExactMatrix::diagonal(const std::vector<Rational>& d) {
    ExactMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m.at(i, i) = d[i];
    return m;
}

ExactMatrix ExactMatrix::from_rows(std::size_t rows, std::size_t cols,
                                   std::vector<Rational> entries) {
    if (entries.size() != rows * cols)
        throw DimensionError("from_rows: entry count does not match shape");
    ExactMatrix m(rows, cols);
    m.a_ = std::move(entries);
    return m;
}

ExactMatrix ExactMatrix::transpose() const {
    ExactMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& o) const {
    if (cols_ != o.rows_) throw DimensionError("matrix product: shape mismatch");
    ExactMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rational& aik = at(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                r.at(i, j) += aik * o.at(k, j);
        }
    return r;
}

ExactMatrix ExactMatrix::operator+(const ExactMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix sum: shape mismatch");
    ExactMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

ExactMatrix ExactMatrix::operator-(const ExactMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix diff: shape mismatch");
    ExactMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

bool ExactMatrix::operator==(const ExactMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (std::size_t i = 0; i < a_.size(); ++i)
        if (a_[i] != o.a_[i]) return false;
    return true;
}

bool ExactMatrix::is_symmetric() const {
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

bool ExactMatrix::is_identity() const {
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (at(i, j) != Rational(i == j ? 1 : 0)) return false;
    return true;
}

// Bareiss: every division below is exact over the integers, which keeps
// intermediate entries at minor-sized magnitudes instead of products of
// minors. Row scaling first reduces the rational input to that integer case.
Rational ExactMatrix::det() const {
    if (!square()) throw DimensionError("det: matrix not square");
    const std::size_t n = rows_;
    if (n == 0) return Rational(1);

    ExactMatrix m(*this);
    Rational scale(1);  // det(original) = det(scaled) / scale
    for (std::size_t i = 0; i < n; ++i) {
        Rational rowlcm(1);
        for (std::size_t j = 0; j < n; ++j) {
            // lcm of denominators, built incrementally: lcm(a,b) via gcd-free
            // shortcut den(x * rowlcm) after multiplication is the residual.
            Rational v = m.at(i, j) * rowlcm;
            if (!v.is_integer())
                rowlcm = rowlcm * Rational::from_string(v.denominator_string());
        }
        if (rowlcm != Rational(1)) {
            for (std::size_t j = 0; j < n; ++j) m.at(i, j) *= rowlcm;
            scale *= rowlcm;
        }
    }

    Rational prev(1);
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m.at(k, k).is_zero()) {
            std::size_t p = k + 1;
            while (p < n && m.at(p, k).is_zero()) ++p;
            if (p == n) return Rational(0);
            for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(p, j));
            sign = -sign;
        }
        const Rational pivot = m.at(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m.at(i, j) = (m.at(i, j) * pivot - m.at(i, k) * m.at(k, j)) / prev;
            m.at(i, k) = Rational(0);
        }
        prev = pivot;
    }
    Rational d = m.at(n - 1, n - 1);
    if (sign < 0) d = -d;
    return d / scale;
}

ExactMatrix ExactMatrix::inverse() const {
    if (!square()) throw DimensionError("inverse: matrix not square");
    const std::size_t n = rows_;
    ExactMatrix m(*this);
    ExactMatrix inv = identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && m.at(p, k).is_zero()) ++p;
        if (p == n) throw SingularMatrixError("inverse: singular matrix");
        if (p != k)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(m.at(k, j), m.at(p, j));
                std::swap(inv.at(k, j), inv.at(p, j));
            }
        const Rational pivot = m.at(k, k);
        for (std::size_t j = 0; j < n; ++j) {
            m.at(k, j) /= pivot;
            inv.at(k, j) /= pivot;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || m.at(i, k).is_zero()) continue;
            const Rational f = m.at(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                m.at(i, j) -= f * m.at(k, j);
                inv.at(i, j) -= f * inv.at(k, j);
            }
        }
    }
    return inv;
}

ExactMatrix ExactMatrix::submatrix(const std::vector<std::size_t>& rowset,
                                   const std::vector<std::size_t>& colset) const {
    for (std::size_t i = 0; i + 1 < rowset.size(); ++i)
        if (rowset[i] >= rowset[i + 1])
            throw DimensionError("submatrix: row set not strictly increasing");
    for (std::size_t i = 0; i + 1 < colset.size(); ++i)
        if (colset[i] >= colset[i + 1])
            throw DimensionError("submatrix: col set not strictly increasing");
    if (!rowset.empty() && rowset.back() >= rows_)
        throw DimensionError("submatrix: row index out of range");
    if (!colset.empty() && colset.back() >= cols_)
        throw DimensionError("submatrix: col index out of range");
    ExactMatrix s(rowset.size(), colset.size());
    for (std::size_t i = 0; i < rowset.size(); ++i)
        for (std::size_t j = 0; j < colset.size(); ++j)
            s.at(i, j) = at(rowset[i], colset[j]);
    return s;
}

Rational ExactMatrix::minor(const std::vector<std::size_t>& rowset,
                            const std::vector<std::size_t>& colset) const {
    if (rowset.size() != colset.size())
        throw DimensionError("minor: index sets of different cardinality");
    return submatrix(rowset, colset).det();
}

std::pair<ExactMatrix, ExactMatrix> ExactMatrix::ldlt() const {
    if (!is_symmetric()) throw FactorizationError("ldlt: matrix not symmetric");
    const std::size_t n = rows_;
    ExactMatrix L = identity(n);
    ExactMatrix D(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        Rational dj = at(j, j);
        for (std::size_t k = 0; k < j; ++k) dj -= L.at(j, k) * L.at(j, k) * D.at(k, k);
        if (dj.is_zero()) throw FactorizationError("ldlt: zero pivot");
        D.at(j, j) = dj;
        for (std::size_t i = j + 1; i < n; ++i) {
            Rational v = at(i, j);
            for (std::size_t k = 0; k < j; ++k) v -= L.at(i, k) * L.at(j, k) * D.at(k, k);
            L.at(i, j) = v / dj;
        }
    }
    return {L, D};
}

std::string ExactMatrix::to_json() const {
    nlohmann::json j;
    j["rows"] = rows_;
    j["cols"] = cols_;
    auto entries = nlohmann::json::array();
    for (std::size_t i = 0; i < rows_; ++i) {
        auto row = nlohmann::json::array();
        for (std::size_t k = 0; k < cols_; ++k) row.push_back(at(i, k).to_string());
        entries.push_back(row);
    }
    j["entries"] = entries;
    return j.dump();
}

ExactMatrix ExactMatrix::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    const std::size_t rows = j.at("rows").get<std::size_t>();
    const std::size_t cols = j.at("cols").get<std::size_t>();
    const auto& entries = j.at("entries");
    if (entries.size() != rows) throw DimensionError("from_json: row count mismatch");
    ExactMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (entries[i].size() != cols) throw DimensionError("from_json: col count mismatch");
        for (std::size_t k = 0; k < cols; ++k)
            m.at(i, k) = Rational::from_string(entries[i][k].get<std::string>());
    }
    return m;
}

}  // namespace halfspace
