#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "mbr/gf.hpp"

namespace mbr {

struct SingularMatrix : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Dense row-major matrix over a Field. Values are immutable in spirit:
/// operations return fresh matrices.
struct Mat {
  int rows = 0, cols = 0;
  Field field;
  std::vector<FieldElem> e;

  Mat() = default;
  Mat(int r, int c, Field f) : rows(r), cols(c), field(std::move(f)) {
    e.assign((size_t)r * c, field.zero());
  }

  FieldElem& at(int r, int c) { return e[(size_t)r * cols + c]; }
  const FieldElem& at(int r, int c) const { return e[(size_t)r * cols + c]; }

  static Mat identity(int n, const Field& f) {
    Mat m(n, n, f);
    for (int i = 0; i < n; ++i) m.at(i, i) = f.one();
    return m;
  }

  static Mat col_vector(const std::vector<FieldElem>& v, const Field& f) {
    Mat m((int)v.size(), 1, f);
    for (int i = 0; i < (int)v.size(); ++i) m.at(i, 0) = v[i];
    return m;
  }

  std::vector<FieldElem> column(int c) const {
    std::vector<FieldElem> v;
    v.reserve(rows);
    for (int r = 0; r < rows; ++r) v.push_back(at(r, c));
    return v;
  }
  void set_column(int c, const std::vector<FieldElem>& v) {
    for (int r = 0; r < rows; ++r) at(r, c) = v[r];
  }

  Mat transpose() const {
    Mat t(cols, rows, field);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) t.at(c, r) = at(r, c);
    return t;
  }

  bool operator==(const Mat& o) const {
    return rows == o.rows && cols == o.cols && field == o.field && e == o.e;
  }
};

inline Mat mat_add(const Mat& a, const Mat& b) {
  if (a.rows != b.rows || a.cols != b.cols)
    throw std::invalid_argument("shape mismatch in add");
  Mat r = a;
  for (size_t i = 0; i < r.e.size(); ++i) r.e[i] = a.field.add(a.e[i], b.e[i]);
  return r;
}

inline Mat mat_mul(const Mat& a, const Mat& b) {
  if (a.cols != b.rows) throw std::invalid_argument("shape mismatch in mul");
  const Field& f = a.field;
  Mat r(a.rows, b.cols, f);
  for (int i = 0; i < a.rows; ++i)
    for (int l = 0; l < a.cols; ++l) {
      const FieldElem& ail = a.at(i, l);
      if (ail.is_zero()) continue;
      for (int j = 0; j < b.cols; ++j) {
        const FieldElem& blj = b.at(l, j);
        if (blj.is_zero()) continue;
        r.at(i, j) = f.add(r.at(i, j), f.mul(ail, blj));
      }
    }
  return r;
}

/// Element-wise (Hadamard) product.
inline Mat hadamard(const Mat& u, const Mat& v) {
  if (u.rows != v.rows || u.cols != v.cols)
    throw std::invalid_argument("shape mismatch in hadamard");
  Mat r = u;
  for (size_t i = 0; i < r.e.size(); ++i) r.e[i] = u.field.mul(u.e[i], v.e[i]);
  return r;
}

/// Cauchy matrix: entry (i,j) = (x_i + y_j)^{-1} (char 2). Every square
/// submatrix is invertible.
inline Mat cauchy(const std::vector<FieldElem>& x,
                  const std::vector<FieldElem>& y, const Field& f) {
  for (size_t i = 0; i < x.size(); ++i)
    for (size_t j = i + 1; j < x.size(); ++j)
      if (x[i] == x[j]) throw std::invalid_argument("coincident Cauchy x points");
  for (size_t i = 0; i < y.size(); ++i)
    for (size_t j = i + 1; j < y.size(); ++j)
      if (y[i] == y[j]) throw std::invalid_argument("coincident Cauchy y points");
  Mat m((int)x.size(), (int)y.size(), f);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) {
      FieldElem s = f.add(x[i], y[j]);
      if (s.is_zero())
        throw std::invalid_argument("coincident Cauchy points (x_i = y_j)");
      m.at(i, j) = f.inv(s);
    }
  return m;
}

namespace detail {

// Row-reduce [A | B] in place. Returns rank of A. First-nonzero pivoting,
// lowest row index wins: reduced forms are reproducible.
inline int eliminate(Mat& A, Mat* B) {
  const Field& f = A.field;
  int rank = 0;
  for (int col = 0; col < A.cols && rank < A.rows; ++col) {
    int piv = -1;
    for (int r = rank; r < A.rows; ++r)
      if (!A.at(r, col).is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    if (piv != rank) {
      for (int c = 0; c < A.cols; ++c) std::swap(A.at(piv, c), A.at(rank, c));
      if (B)
        for (int c = 0; c < B->cols; ++c)
          std::swap(B->at(piv, c), B->at(rank, c));
    }
    FieldElem pinv = f.inv(A.at(rank, col));
    for (int c = 0; c < A.cols; ++c) A.at(rank, c) = f.mul(pinv, A.at(rank, c));
    if (B)
      for (int c = 0; c < B->cols; ++c)
        B->at(rank, c) = f.mul(pinv, B->at(rank, c));
    for (int r = 0; r < A.rows; ++r) {
      if (r == rank) continue;
      FieldElem m = A.at(r, col);
      if (m.is_zero()) continue;
      for (int c = 0; c < A.cols; ++c)
        A.at(r, c) = f.add(A.at(r, c), f.mul(m, A.at(rank, c)));
      if (B)
        for (int c = 0; c < B->cols; ++c)
          B->at(r, c) = f.add(B->at(r, c), f.mul(m, B->at(rank, c)));
    }
    ++rank;
  }
  return rank;
}

}  // namespace detail

inline int rank(Mat a) { return detail::eliminate(a, nullptr); }

/// Solve A x = b for square or overdetermined A with full column rank.
inline Mat solve(Mat a, Mat b) {
  if (a.rows != b.rows) throw std::invalid_argument("shape mismatch in solve");
  if (a.rows < a.cols) throw std::invalid_argument("underdetermined system");
  int rk = detail::eliminate(a, &b);
  if (rk < a.cols) throw SingularMatrix("rank-deficient system");
  // consistency of extra equations
  for (int r = a.cols; r < a.rows; ++r)
    for (int c = 0; c < b.cols; ++c)
      if (!b.at(r, c).is_zero()) throw SingularMatrix("inconsistent system");
  Mat x(a.cols, b.cols, a.field);
  for (int r = 0; r < a.cols; ++r)
    for (int c = 0; c < b.cols; ++c) x.at(r, c) = b.at(r, c);
  return x;
}

inline std::vector<FieldElem> solve_vec(const Mat& a,
                                        const std::vector<FieldElem>& b) {
  return solve(a, Mat::col_vector(b, a.field)).column(0);
}

inline Mat inverse(const Mat& a) {
  if (a.rows != a.cols) throw std::invalid_argument("inverse of non-square");
  return solve(a, Mat::identity(a.rows, a.field));
}

/// Rank of the (rows*m) x cols base-field matrix obtained by expanding each
/// F_{q^m} entry into its m base coordinates: the maximum number of columns
/// linearly independent over F_q.
inline int rank_over_subfield(const Mat& a) {
  const Field& f = a.field;
  int m = f.ext_degree();
  Field bf = f.base_field();
  Mat expanded(a.rows * m, a.cols, bf);
  for (int r = 0; r < a.rows; ++r)
    for (int c = 0; c < a.cols; ++c)
      for (int i = 0; i < m; ++i)
        expanded.at(r * m + i, c) = bf.scalar(a.at(r, c).c[i]);
  return rank(expanded);
}

}  // namespace mbr
