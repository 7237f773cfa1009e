#ifndef HALFSPACE_EXACT_MATRIX_HPP
#define HALFSPACE_EXACT_MATRIX_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "halfspace/rational.hpp"

namespace halfspace {

/// Dense matrix of exact rationals. This is the ground truth the rest of the
/// project checks itself against: no floating point enters anywhere here.
class ExactMatrix {
  public:
    ExactMatrix() : rows_(0), cols_(0) {}
    ExactMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}

    static ExactMatrix identity(std::size_t n);
    static ExactMatrix diagonal(const std::vector<Rational>& d);
    /// Row-major initializer, entries.size() must be rows*cols.
    static ExactMatrix from_rows(std::size_t rows, std::size_t cols,
                                 std::vector<Rational> entries);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Rational& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rational& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    ExactMatrix transpose() const;
    ExactMatrix operator*(const ExactMatrix& o) const;
    ExactMatrix operator+(const ExactMatrix& o) const;
    ExactMatrix operator-(const ExactMatrix& o) const;
    bool operator==(const ExactMatrix& o) const;
    bool operator!=(const ExactMatrix& o) const { return !(*this == o); }

    bool is_symmetric() const;
    bool is_identity() const;

    /// Exact determinant by fraction-free (Bareiss) elimination over the
    /// integers, after clearing row denominators. Throws on non-square input.
    Rational det() const;

    /// Exact inverse via Gauss-Jordan elimination. Throws DimensionError on
    /// non-square input, SingularMatrixError if det = 0.
    ExactMatrix inverse() const;

    /// Determinant of the submatrix picked out by strictly increasing row and
    /// column index sets of equal cardinality.
    Rational minor(const std::vector<std::size_t>& rowset,
                   const std::vector<std::size_t>& colset) const;

    ExactMatrix submatrix(const std::vector<std::size_t>& rowset,
                          const std::vector<std::size_t>& colset) const;

    /// LDL^T factorization of a symmetric matrix with nonzero leading
    /// principal minors: L lower uni-triangular, D diagonal, L D L^T = this.
    std::pair<ExactMatrix, ExactMatrix> ldlt() const;

    /// JSON per the wire format:
    /// {"rows":r,"cols":c,"entries":[["num/den",...],...]}
    std::string to_json() const;
    static ExactMatrix from_json(const std::string& text);

  private:
    std::size_t rows_, cols_;
    std::vector<Rational> a_;
};

struct DimensionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SingularMatrixError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct FactorizationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace halfspace

#endif
