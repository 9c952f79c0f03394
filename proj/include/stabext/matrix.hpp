#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "stabext/field.hpp"

namespace stabext {

using Scalar = mpq_class;
using Vec = std::vector<Scalar>;

/// Dense exact matrix over a FieldSpec, row-major.  All operations pure.
class Mat {
public:
  Mat() : f_(FieldSpec::rationals()), rows_(0), cols_(0) {}

  Mat(FieldSpec f, size_t rows, size_t cols)
      : f_(f), rows_(rows), cols_(cols), a_(rows * cols, Scalar(0)) {}

  static Mat identity(FieldSpec f, size_t n) {
    Mat m(f, n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  static Mat zero(FieldSpec f, size_t r, size_t c) { return Mat(f, r, c); }

  static Mat from_columns(FieldSpec f, size_t rows, const std::vector<Vec>& cols) {
    Mat m(f, rows, cols.size());
    for (size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw std::invalid_argument("Mat::from_columns: bad column length");
      for (size_t i = 0; i < rows; ++i) m.at(i, j) = cols[j][i];
    }
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  const FieldSpec& field() const { return f_; }

  Scalar& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
  const Scalar& at(size_t i, size_t j) const { return a_[i * cols_ + j]; }

  void set(size_t i, size_t j, const Scalar& v) { at(i, j) = f_.reduce(v); }

  bool operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && f_ == o.f_ && a_ == o.a_;
  }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  bool is_zero() const {
    for (const auto& x : a_)
      if (x != 0) return false;
    return true;
  }

  Mat transpose() const {
    Mat t(f_, cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  Mat operator+(const Mat& o) const {
    check_same_shape(o);
    Mat r(f_, rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = f_.add(a_[k], o.a_[k]);
    return r;
  }

  Mat operator-(const Mat& o) const {
    check_same_shape(o);
    Mat r(f_, rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = f_.sub(a_[k], o.a_[k]);
    return r;
  }

  Mat operator*(const Mat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("Mat: dimension mismatch in product");
    Mat r(f_, rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t k = 0; k < cols_; ++k) {
        const Scalar& aik = at(i, k);
        if (aik == 0) continue;
        for (size_t j = 0; j < o.cols_; ++j) {
          const Scalar& bkj = o.at(k, j);
          if (bkj == 0) continue;
          r.at(i, j) += aik * bkj;
        }
      }
    for (auto& x : r.a_) x = f_.reduce(x);
    return r;
  }

  Mat scaled(const Scalar& c) const {
    Mat r(f_, rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = f_.mul(a_[k], c);
    return r;
  }

  Vec apply(const Vec& v) const {
    if (v.size() != cols_) throw std::invalid_argument("Mat::apply: dimension mismatch");
    Vec r(rows_, Scalar(0));
    for (size_t i = 0; i < rows_; ++i) {
      Scalar s(0);
      for (size_t j = 0; j < cols_; ++j)
        if (at(i, j) != 0 && v[j] != 0) s += at(i, j) * v[j];
      r[i] = f_.reduce(s);
    }
    return r;
  }

  Mat pow(size_t n) const {
    if (rows_ != cols_) throw std::invalid_argument("Mat::pow: square matrix required");
    Mat result = identity(f_, rows_);
    Mat base = *this;
    while (n > 0) {
      if (n & 1) result = result * base;
      base = (n >>= 1) ? base * base : base;
    }
    return result;
  }

  Scalar trace() const {
    if (rows_ != cols_) throw std::invalid_argument("Mat::trace: square matrix required");
    Scalar s(0);
    for (size_t i = 0; i < rows_; ++i) s += at(i, i);
    return f_.reduce(s);
  }

  Mat hstack(const Mat& o) const {
    if (rows_ != o.rows_) throw std::invalid_argument("Mat::hstack: row mismatch");
    Mat r(f_, rows_, cols_ + o.cols_);
    for (size_t i = 0; i < rows_; ++i) {
      for (size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
      for (size_t j = 0; j < o.cols_; ++j) r.at(i, cols_ + j) = o.at(i, j);
    }
    return r;
  }

  Mat vstack(const Mat& o) const {
    if (cols_ != o.cols_) throw std::invalid_argument("Mat::vstack: column mismatch");
    Mat r(f_, rows_ + o.rows_, cols_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
    for (size_t i = 0; i < o.rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) r.at(rows_ + i, j) = o.at(i, j);
    return r;
  }

  Vec column(size_t j) const {
    Vec v(rows_);
    for (size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
    return v;
  }

  Mat columns(const std::vector<size_t>& idx) const {
    Mat r(f_, rows_, idx.size());
    for (size_t j = 0; j < idx.size(); ++j)
      for (size_t i = 0; i < rows_; ++i) r.at(i, j) = at(i, idx[j]);
    return r;
  }

  static Mat random(FieldSpec f, size_t rows, size_t cols, std::mt19937_64& rng) {
    Mat m(f, rows, cols);
    for (auto& x : m.a_) x = f.random(rng);
    return m;
  }

private:
  void check_same_shape(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Mat: shape mismatch");
  }

  FieldSpec f_;
  size_t rows_, cols_;
  std::vector<Scalar> a_;
};

struct RrefResult {
  Mat r;
  std::vector<size_t> pivots;
  size_t rank() const { return pivots.size(); }
};

/// Reduced row echelon form, leftmost-pivot topmost-row; deterministic.
inline RrefResult rref(Mat a) {
  const FieldSpec f = a.field();
  const size_t rows = a.rows(), cols = a.cols();
  std::vector<size_t> pivots;
  size_t pr = 0;  // next pivot row
  for (size_t pc = 0; pc < cols && pr < rows; ++pc) {
    size_t sel = rows;
    for (size_t i = pr; i < rows; ++i)
      if (a.at(i, pc) != 0) { sel = i; break; }
    if (sel == rows) continue;
    if (sel != pr)
      for (size_t j = pc; j < cols; ++j) std::swap(a.at(pr, j), a.at(sel, j));
    const Scalar pivinv = f.inv(a.at(pr, pc));
    // normalize pivot row; remember its nonzero tail for sparse-ish updates
    std::vector<size_t> nz;
    for (size_t j = pc; j < cols; ++j) {
      if (a.at(pr, j) == 0) continue;
      a.at(pr, j) = f.mul(a.at(pr, j), pivinv);
      nz.push_back(j);
    }
    for (size_t i = 0; i < rows; ++i) {
      if (i == pr) continue;
      const Scalar c = a.at(i, pc);
      if (c == 0) continue;
      for (size_t j : nz) a.at(i, j) = f.sub(a.at(i, j), f.mul(c, a.at(pr, j)));
    }
    pivots.push_back(pc);
    ++pr;
  }
  return {std::move(a), std::move(pivots)};
}

inline size_t rank(const Mat& a) { return rref(a).rank(); }

/// Basis of ker(A), free columns ascending; columns of the result span ker(A).
inline Mat kernel_basis(const Mat& a) {
  RrefResult rr = rref(a);
  const FieldSpec f = a.field();
  const size_t cols = a.cols();
  std::vector<bool> is_pivot(cols, false);
  for (size_t p : rr.pivots) is_pivot[p] = true;
  std::vector<size_t> free_cols;
  for (size_t j = 0; j < cols; ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
  Mat k(f, cols, free_cols.size());
  for (size_t c = 0; c < free_cols.size(); ++c) {
    const size_t fc = free_cols[c];
    k.at(fc, c) = 1;
    for (size_t pi = 0; pi < rr.pivots.size(); ++pi)
      k.at(rr.pivots[pi], c) = f.neg(rr.r.at(pi, fc));
  }
  return k;
}

/// One solution of A x = b with free variables set to zero, or nullopt.
inline std::optional<Vec> solve(const Mat& a, const Vec& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve: dimension mismatch");
  Mat aug = a.hstack(Mat::from_columns(a.field(), a.rows(), {b}));
  RrefResult rr = rref(std::move(aug));
  const size_t n = a.cols();
  Vec x(n, Scalar(0));
  for (size_t pi = 0; pi < rr.pivots.size(); ++pi) {
    if (rr.pivots[pi] == n) return std::nullopt;  // pivot in the augmented column
    x[rr.pivots[pi]] = rr.r.at(pi, n);
  }
  return x;
}

/// Columnwise solve A X = B (free variables zero), or nullopt if any column
/// is inconsistent.
inline std::optional<Mat> solve_matrix(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve_matrix: dimension mismatch");
  RrefResult rr = rref(a.hstack(b));
  const size_t n = a.cols();
  Mat x(a.field(), n, b.cols());
  for (size_t pi = 0; pi < rr.pivots.size(); ++pi) {
    if (rr.pivots[pi] >= n) return std::nullopt;
    for (size_t j = 0; j < b.cols(); ++j) x.at(rr.pivots[pi], j) = rr.r.at(pi, n + j);
  }
  return x;
}

/// Pivot columns of A (a basis of the column space), in ascending order.
inline Mat column_space_basis(const Mat& a) {
  return a.columns(rref(a).pivots);
}

inline std::optional<Mat> inverse(const Mat& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  RrefResult rr = rref(a.hstack(Mat::identity(a.field(), a.rows())));
  if (rr.rank() != a.rows()) return std::nullopt;
  for (size_t pi = 0; pi < rr.pivots.size(); ++pi)
    if (rr.pivots[pi] != pi) return std::nullopt;
  Mat inv(a.field(), a.rows(), a.rows());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.rows(); ++j) inv.at(i, j) = rr.r.at(i, a.rows() + j);
  return inv;
}

/// Membership: is v in the column space of B?
inline bool in_column_space(const Mat& b, const Vec& v) {
  return solve(b, v).has_value();
}

}  // namespace stabext
