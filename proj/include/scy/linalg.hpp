#pragma once

#include <optional>
#include <vector>

#include "error.hpp"
#include "rational.hpp"

namespace scy {

// Dense matrix over an exact ring.  Row-reduction style operations are only
// instantiated for GaussRat (a field); the generic part is plain arithmetic.
template <class R>
struct Mat {
  int rows = 0, cols = 0;
  std::vector<R> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, R{}) {}

  R& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const R& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = R(1);
    return m;
  }

  Mat transpose() const {
    Mat t(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  bool is_zero() const {
    for (const auto& x : a)
      if (!x.is_zero()) return false;
    return true;
  }

  friend Mat operator+(const Mat& x, const Mat& y) {
    require(x.rows == y.rows && x.cols == y.cols, "incompatible-ring", "matrix shape mismatch");
    Mat z(x.rows, x.cols);
    for (size_t k = 0; k < x.a.size(); ++k) z.a[k] = x.a[k] + y.a[k];
    return z;
  }
  friend Mat operator-(const Mat& x, const Mat& y) {
    require(x.rows == y.rows && x.cols == y.cols, "incompatible-ring", "matrix shape mismatch");
    Mat z(x.rows, x.cols);
    for (size_t k = 0; k < x.a.size(); ++k) z.a[k] = x.a[k] - y.a[k];
    return z;
  }
  friend Mat operator-(const Mat& x) {
    Mat z(x.rows, x.cols);
    for (size_t k = 0; k < x.a.size(); ++k) z.a[k] = -x.a[k];
    return z;
  }
  friend Mat operator*(const Mat& x, const Mat& y) {
    require(x.cols == y.rows, "incompatible-ring", "matrix shape mismatch");
    Mat z(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
      for (int k = 0; k < x.cols; ++k) {
        const R& xik = x.at(i, k);
        if (xik.is_zero()) continue;
        for (int j = 0; j < y.cols; ++j) z.at(i, j) += xik * y.at(k, j);
      }
    return z;
  }
  friend Mat operator*(const R& c, const Mat& x) {
    Mat z(x.rows, x.cols);
    for (size_t k = 0; k < x.a.size(); ++k) z.a[k] = c * x.a[k];
    return z;
  }
  Mat& operator+=(const Mat& y) { return *this = *this + y; }

  friend bool operator==(const Mat& x, const Mat& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }
};

using MatQ = Mat<GaussRat>;
using VecQ = std::vector<GaussRat>;

inline VecQ mat_apply(const MatQ& m, const VecQ& v) {
  require(m.cols == static_cast<int>(v.size()), "incompatible-ring", "matrix/vector shape");
  VecQ out(m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) out[i] += m.at(i, j) * v[j];
  return out;
}

// In-place reduced row echelon form; returns pivot column per pivot row.
inline std::vector<int> rref(MatQ& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int p = -1;
    for (int i = row; i < m.rows; ++i)
      if (!m.at(i, col).is_zero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    for (int j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(row, j));
    GaussRat inv = m.at(row, col).inverse();
    for (int j = 0; j < m.cols; ++j) m.at(row, j) *= inv;
    for (int i = 0; i < m.rows; ++i) {
      if (i == row || m.at(i, col).is_zero()) continue;
      GaussRat f = m.at(i, col);
      for (int j = 0; j < m.cols; ++j) m.at(i, j) -= f * m.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline int rank(MatQ m) { return static_cast<int>(rref(m).size()); }

inline MatQ inverse(const MatQ& m) {
  require(m.rows == m.cols, "singular-matrix", "non-square matrix");
  int n = m.rows;
  MatQ aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = GaussRat(1);
  }
  auto piv = rref(aug);
  require(static_cast<int>(piv.size()) == n && piv.back() == n - 1, "singular-matrix",
          "matrix is not invertible");
  MatQ out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.at(i, j) = aug.at(i, n + j);
  return out;
}

inline GaussRat det(MatQ m) {
  require(m.rows == m.cols, "singular-matrix", "non-square matrix");
  GaussRat d(1);
  int n = m.rows;
  for (int col = 0; col < n; ++col) {
    int p = -1;
    for (int i = col; i < n; ++i)
      if (!m.at(i, col).is_zero()) {
        p = i;
        break;
      }
    if (p < 0) return GaussRat(0);
    if (p != col) {
      for (int j = 0; j < n; ++j) std::swap(m.at(p, j), m.at(col, j));
      d = -d;
    }
    d *= m.at(col, col);
    GaussRat inv = m.at(col, col).inverse();
    for (int i = col + 1; i < n; ++i) {
      if (m.at(i, col).is_zero()) continue;
      GaussRat f = m.at(i, col) * inv;
      for (int j = col; j < n; ++j) m.at(i, j) -= f * m.at(col, j);
    }
  }
  return d;
}

// Solves A x = b exactly; nullopt when inconsistent.  Free variables are 0.
inline std::optional<VecQ> solve(const MatQ& A, const VecQ& b) {
  require(A.rows == static_cast<int>(b.size()), "incompatible-ring", "solve shape mismatch");
  MatQ aug(A.rows, A.cols + 1);
  for (int i = 0; i < A.rows; ++i) {
    for (int j = 0; j < A.cols; ++j) aug.at(i, j) = A.at(i, j);
    aug.at(i, A.cols) = b[i];
  }
  auto piv = rref(aug);
  if (!piv.empty() && piv.back() == A.cols) return std::nullopt;
  VecQ x(A.cols, GaussRat(0));
  for (size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug.at(static_cast<int>(r), A.cols);
  return x;
}

// Is v in the row span of M?
inline bool in_row_span(const MatQ& M, const VecQ& v) {
  MatQ base = M;
  int r0 = rank(base);
  MatQ ext(M.rows + 1, M.cols);
  for (int i = 0; i < M.rows; ++i)
    for (int j = 0; j < M.cols; ++j) ext.at(i, j) = M.at(i, j);
  for (int j = 0; j < M.cols; ++j) ext.at(M.rows, j) = v[j];
  return rank(ext) == r0;
}

// Leading principal minors, for Sylvester's positive-definiteness criterion.
// Entries must be real.
inline std::vector<Rational> leading_minors(const MatQ& m) {
  require(m.rows == m.cols, "singular-metric", "non-square matrix");
  std::vector<Rational> out;
  for (int k = 1; k <= m.rows; ++k) {
    MatQ sub(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        require(m.at(i, j).is_real(), "singular-metric", "minor test needs real entries");
        sub.at(i, j) = m.at(i, j);
      }
    out.push_back(det(sub).re);
  }
  return out;
}

inline bool positive_definite(const MatQ& m) {
  for (const auto& d : leading_minors(m))
    if (d <= 0) return false;
  return true;
}

} // namespace scy
