#pragma once

// Dense exact linear algebra over the cyclotomic field. Row reduction uses
// deterministic first-nonzero pivoting and exact division; no magnitude
// heuristics, so identical inputs always reduce identically.

#include "harmeig/cyclotomic.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace harmeig {

class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("Mat: negative dimension");
  }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Cyc::one();
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Cyc& at(int r, int c) { return a_[idx(r, c)]; }
  const Cyc& at(int r, int c) const { return a_[idx(r, c)]; }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!x.is_zero()) return false;
    return true;
  }

  friend Mat operator+(const Mat& x, const Mat& y) {
    check_same_shape(x, y);
    Mat r(x.rows_, x.cols_);
    for (std::size_t i = 0; i < x.a_.size(); ++i) r.a_[i] = x.a_[i] + y.a_[i];
    return r;
  }
  friend Mat operator-(const Mat& x, const Mat& y) {
    check_same_shape(x, y);
    Mat r(x.rows_, x.cols_);
    for (std::size_t i = 0; i < x.a_.size(); ++i) r.a_[i] = x.a_[i] - y.a_[i];
    return r;
  }
  friend Mat operator*(const Cyc& s, const Mat& x) {
    Mat r(x.rows_, x.cols_);
    for (std::size_t i = 0; i < x.a_.size(); ++i) r.a_[i] = s * x.a_[i];
    return r;
  }
  friend Mat operator*(const Mat& x, const Mat& y) {
    if (x.cols_ != y.rows_) throw std::invalid_argument("Mat*: shape mismatch");
    Mat r(x.rows_, y.cols_);
    for (int i = 0; i < x.rows_; ++i)
      for (int k = 0; k < x.cols_; ++k) {
        if (x.at(i, k).is_zero()) continue;
        for (int j = 0; j < y.cols_; ++j) {
          if (y.at(k, j).is_zero()) continue;
          r.at(i, j) += x.at(i, k) * y.at(k, j);
        }
      }
    return r;
  }
  friend bool operator==(const Mat& x, const Mat& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }
  friend bool operator!=(const Mat& x, const Mat& y) { return !(x == y); }

  Mat conj_entrywise() const {
    Mat r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i].conj();
    return r;
  }

  Mat transpose() const {
    Mat r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  Mat col(int j) const {
    Mat r(rows_, 1);
    for (int i = 0; i < rows_; ++i) r.at(i, 0) = at(i, j);
    return r;
  }

  // Columns of x followed by columns of y.
  static Mat hcat(const Mat& x, const Mat& y) {
    if (x.rows_ != y.rows_) throw std::invalid_argument("hcat: row mismatch");
    Mat r(x.rows_, x.cols_ + y.cols_);
    for (int i = 0; i < x.rows_; ++i) {
      for (int j = 0; j < x.cols_; ++j) r.at(i, j) = x.at(i, j);
      for (int j = 0; j < y.cols_; ++j) r.at(i, x.cols_ + j) = y.at(i, j);
    }
    return r;
  }

 private:
  static void check_same_shape(const Mat& x, const Mat& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
      throw std::invalid_argument("Mat: shape mismatch");
  }
  std::size_t idx(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw std::out_of_range("Mat::at");
    return static_cast<std::size_t>(r) * cols_ + c;
  }

  int rows_, cols_;
  std::vector<Cyc> a_;
};

inline Mat kron(const Mat& x, const Mat& y) {
  Mat r(x.rows() * y.rows(), x.cols() * y.cols());
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j) {
      if (x.at(i, j).is_zero()) continue;
      for (int k = 0; k < y.rows(); ++k)
        for (int l = 0; l < y.cols(); ++l) {
          if (y.at(k, l).is_zero()) continue;
          r.at(i * y.rows() + k, j * y.cols() + l) = x.at(i, j) * y.at(k, l);
        }
    }
  return r;
}

// In-place reduced row echelon form; returns pivot column indices.
inline std::vector<int> rref_inplace(Mat& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int piv = -1;
    for (int r = row; r < m.rows(); ++r)
      if (!m.at(r, col).is_zero()) { piv = r; break; }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(row, j));
    Cyc inv_p = m.at(row, col).inv();
    for (int j = col; j < m.cols(); ++j) m.at(row, j) = inv_p * m.at(row, j);
    for (int r = 0; r < m.rows(); ++r) {
      if (r == row || m.at(r, col).is_zero()) continue;
      Cyc f = m.at(r, col);
      for (int j = col; j < m.cols(); ++j) m.at(r, j) -= f * m.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline int rank(Mat m) { return static_cast<int>(rref_inplace(m).size()); }

// Basis of the right kernel, one column per free variable, in free-column order.
inline Mat nullspace(Mat m) {
  const int n = m.cols();
  std::vector<int> pivots = rref_inplace(m);
  std::vector<bool> is_pivot(n, false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<int> free_cols;
  for (int j = 0; j < n; ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
  Mat basis(n, static_cast<int>(free_cols.size()));
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    int f = free_cols[k];
    basis.at(f, static_cast<int>(k)) = Cyc::one();
    for (std::size_t r = 0; r < pivots.size(); ++r)
      basis.at(pivots[r], static_cast<int>(k)) = -m.at(static_cast<int>(r), f);
  }
  return basis;
}

inline int nullity(const Mat& m) { return m.cols() - rank(m); }

// Pivot columns of the original matrix: an exact basis of the column space.
inline Mat column_space(const Mat& m) {
  Mat copy = m;
  std::vector<int> pivots = rref_inplace(copy);
  Mat basis(m.rows(), static_cast<int>(pivots.size()));
  for (std::size_t k = 0; k < pivots.size(); ++k)
    for (int i = 0; i < m.rows(); ++i)
      basis.at(i, static_cast<int>(k)) = m.at(i, pivots[k]);
  return basis;
}

// Exact membership of v (column vector) in the column span of basis.
inline bool in_span(const Mat& basis, const Mat& v) {
  if (v.cols() != 1 || basis.rows() != v.rows())
    throw std::invalid_argument("in_span: shape mismatch");
  if (basis.cols() == 0) return v.is_zero();
  return rank(basis) == rank(Mat::hcat(basis, v));
}

}  // namespace harmeig
