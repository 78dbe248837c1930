#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "nilblock/errors.hpp"
#include "nilblock/rational.hpp"

namespace nilblock {

// Dense row-major matrix over Q.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RatMatrix identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<Rational> row(std::size_t i) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
  }

  friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols_ != b.rows_) throw DomainError("matrix product shape mismatch");
    RatMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

  std::vector<Rational> apply(const std::vector<Rational>& v) const {
    if (v.size() != cols_) throw DomainError("matrix-vector shape mismatch");
    std::vector<Rational> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

// Reduced row echelon form with the accumulated row operations:
// transform * input == reduced.
struct RowReduction {
  RatMatrix reduced;
  RatMatrix transform;
  std::vector<std::size_t> pivot_cols;

  std::size_t rank() const { return pivot_cols.size(); }
};

inline RowReduction row_reduce(const RatMatrix& input) {
  RowReduction rr{input, RatMatrix::identity(input.rows()), {}};
  RatMatrix& m = rr.reduced;
  RatMatrix& t = rr.transform;
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < m.cols() && pivot_row < m.rows(); ++col) {
    std::size_t sel = pivot_row;
    while (sel < m.rows() && m(sel, col) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != pivot_row) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(pivot_row, j));
      for (std::size_t j = 0; j < t.cols(); ++j) std::swap(t(sel, j), t(pivot_row, j));
    }
    const Rational inv = 1 / m(pivot_row, col);
    for (std::size_t j = 0; j < m.cols(); ++j) m(pivot_row, j) *= inv;
    for (std::size_t j = 0; j < t.cols(); ++j) t(pivot_row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == pivot_row || m(i, col) == 0) continue;
      const Rational f = m(i, col);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(pivot_row, j);
      for (std::size_t j = 0; j < t.cols(); ++j) t(i, j) -= f * t(pivot_row, j);
    }
    rr.pivot_cols.push_back(col);
    ++pivot_row;
  }
  return rr;
}

inline std::size_t rank_of(const RatMatrix& m) { return row_reduce(m).rank(); }

// A row functional y with y*A == 0 and y*b != 0: proof that A x = b has no
// rational solution. `residual` is y*b.
struct InconsistencyCertificate {
  std::vector<Rational> functional;
  Rational residual;
};

using LinearSolution = std::variant<std::vector<Rational>, InconsistencyCertificate>;

// Solves A x = b over Q. Free variables are set to zero.
inline LinearSolution solve_linear(const RatMatrix& a, const std::vector<Rational>& b) {
  if (b.size() != a.rows()) throw DomainError("right-hand side has wrong length");
  RatMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  const RowReduction rr = row_reduce(aug);
  std::vector<Rational> x(a.cols());
  for (std::size_t r = 0; r < rr.pivot_cols.size(); ++r) {
    const std::size_t col = rr.pivot_cols[r];
    if (col == a.cols()) {
      // Row r reads [0 ... 0 | 1]; the transform row is the certificate.
      InconsistencyCertificate cert{rr.transform.row(r), 0};
      for (std::size_t i = 0; i < b.size(); ++i) cert.residual += cert.functional[i] * b[i];
      return cert;
    }
    x[col] = rr.reduced(r, a.cols());
  }
  return x;
}

inline bool certificate_holds(const RatMatrix& a, const std::vector<Rational>& b,
                              const InconsistencyCertificate& cert) {
  if (cert.functional.size() != a.rows()) return false;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) s += cert.functional[i] * a(i, j);
    if (s != 0) return false;
  }
  Rational r = 0;
  for (std::size_t i = 0; i < a.rows(); ++i) r += cert.functional[i] * b[i];
  return r != 0 && r == cert.residual;
}

}  // namespace nilblock
