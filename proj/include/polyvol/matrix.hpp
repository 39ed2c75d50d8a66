#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <utility>
#include <vector>

#include "polyvol/arith.hpp"
#include "polyvol/rational.hpp"

namespace polyvol {

template <class Int>
using Vec = std::vector<Int>;

template <class Int>
class Matrix {
public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(size_t r, size_t c) : rows_(r), cols_(c), a_(r * c, IntOps<Int>::zero()) {}
  Matrix(std::initializer_list<std::initializer_list<int64_t>> rows) : rows_(0), cols_(0) {
    for (const auto& r : rows) {
      Vec<Int> v;
      v.reserve(r.size());
      for (int64_t x : r) v.push_back(IntOps<Int>::from_i64(x));
      append_row(v);
    }
  }

  static Matrix identity(size_t n) {
    Matrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = IntOps<Int>::one();
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0; }

  Int& operator()(size_t i, size_t j) { return a_[i * cols_ + j]; }
  const Int& operator()(size_t i, size_t j) const { return a_[i * cols_ + j]; }

  Int* row(size_t i) { return a_.data() + i * cols_; }
  const Int* row(size_t i) const { return a_.data() + i * cols_; }

  Vec<Int> row_vec(size_t i) const {
    return Vec<Int>(row(i), row(i) + cols_);
  }

  void append_row(const Vec<Int>& v) {
    if (rows_ == 0 && cols_ == 0) cols_ = v.size();
    if (v.size() != cols_)
      throw Error(ErrorKind::Internal, "appending row of wrong width");
    a_.insert(a_.end(), v.begin(), v.end());
    ++rows_;
  }

  Matrix selected_rows(const std::vector<uint32_t>& idx) const {
    Matrix m(idx.size(), cols_);
    for (size_t i = 0; i < idx.size(); ++i)
      for (size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(idx[i], j);
    return m;
  }

  Matrix transpose() const {
    Matrix m(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

private:
  size_t rows_, cols_;
  std::vector<Int> a_;
};

template <class Int>
Int dot(const Vec<Int>& a, const Vec<Int>& b) {
  Int s = IntOps<Int>::zero();
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <class Int>
Int dot_row(const Matrix<Int>& m, size_t i, const Vec<Int>& b) {
  Int s = IntOps<Int>::zero();
  const Int* r = m.row(i);
  for (size_t j = 0; j < m.cols(); ++j) s += r[j] * b[j];
  return s;
}

// gcd of |entries|; zero for the zero vector.
template <class Int>
Int content(const Vec<Int>& v) {
  Int g = IntOps<Int>::zero();
  for (const Int& x : v) g = IntOps<Int>::gcd(g, x);
  return IntOps<Int>::abs(g);
}

// Divide by the content, preserving direction.
template <class Int>
void primitivize(Vec<Int>& v) {
  Int g = content(v);
  if (sgn(g) == 0) throw Error(ErrorKind::ZeroVector, "cannot primitivize the zero vector");
  if (g == IntOps<Int>::one()) return;
  for (Int& x : v) x /= g;
}

namespace detail {

// Bareiss fraction-free forward elimination, in place.  Returns the rank,
// the sign of row swaps, the last pivot value (= +-det when square and
// nonsingular) and the pivot column list.  All divisions are exact.
template <class Int>
struct EchelonResult {
  size_t rank = 0;
  int swap_sign = 1;
  Int last_pivot = IntOps<Int>::one();
  std::vector<size_t> pivot_cols;
};

template <class Int>
EchelonResult<Int> echelon_bareiss(Matrix<Int>& m) {
  const size_t rows = m.rows(), cols = m.cols();
  EchelonResult<Int> res;
  Int prev = IntOps<Int>::one();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && sgn(m(piv, c)) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      for (size_t j = 0; j < cols; ++j) std::swap(m(r, j), m(piv, j));
      res.swap_sign = -res.swap_sign;
    }
    for (size_t i = r + 1; i < rows; ++i) {
      for (size_t j = c + 1; j < cols; ++j)
        m(i, j) = (m(r, c) * m(i, j) - m(i, c) * m(r, j)) / prev;
      m(i, c) = IntOps<Int>::zero();
    }
    prev = m(r, c);
    res.pivot_cols.push_back(c);
    ++r;
  }
  res.rank = r;
  res.last_pivot = prev;
  return res;
}

}  // namespace detail

template <class Int>
size_t rank(Matrix<Int> m) {
  return detail::echelon_bareiss(m).rank;
}

template <class Int>
Int det_bareiss(Matrix<Int> m) {
  if (m.rows() != m.cols())
    throw Error(ErrorKind::Internal, "determinant of non-square matrix");
  if (m.rows() == 0) return IntOps<Int>::one();
  auto res = detail::echelon_bareiss(m);
  if (res.rank < m.rows()) return IntOps<Int>::zero();
  Int d = res.last_pivot;
  return res.swap_sign < 0 ? -d : d;
}

// N with M*N = D*I and D = |det M| > 0.  The inverse is computed with
// rational Gauss-Jordan and rescaled; by Cramer's rule D*M^-1 is integer.
template <class Int>
std::pair<Matrix<Int>, Int> invert_with_denominator(const Matrix<Int>& m) {
  const size_t n = m.rows();
  if (n != m.cols())
    throw Error(ErrorKind::Internal, "inverting non-square matrix");
  Int det = det_bareiss(m);
  if (sgn(det) == 0) throw Error(ErrorKind::SingularMatrix, "matrix is singular");
  Int D = IntOps<Int>::abs(det);

  using Q = Rational<Int>;
  std::vector<Q> a(n * 2 * n, Q());
  auto at = [&](size_t i, size_t j) -> Q& { return a[i * 2 * n + j]; };
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) at(i, j) = Q(m(i, j));
    at(i, n + i) = Q(IntOps<Int>::one());
  }
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && at(piv, c).is_zero()) ++piv;
    if (piv == n) throw Error(ErrorKind::SingularMatrix, "matrix is singular");
    if (piv != c)
      for (size_t j = 0; j < 2 * n; ++j) std::swap(at(c, j), at(piv, j));
    Q inv_p = Q(IntOps<Int>::one()) / at(c, c);
    for (size_t j = c; j < 2 * n; ++j) at(c, j) *= inv_p;
    for (size_t i = 0; i < n; ++i) {
      if (i == c || at(i, c).is_zero()) continue;
      Q f = at(i, c);
      for (size_t j = c; j < 2 * n; ++j) at(i, j) -= f * at(c, j);
    }
  }
  Matrix<Int> N(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      Q v = at(i, n + j) * Q(D);
      if (!v.is_integer())
        throw Error(ErrorKind::Internal, "scaled inverse not integral");
      N(i, j) = v.num();
    }
  return {std::move(N), std::move(D)};
}

// Basis of the saturated integer kernel {x : A x = 0} as matrix rows.
// Column elimination with a unimodular transform: the columns of U that end
// up paired with zeroed columns of A form the kernel basis.
template <class Int>
Matrix<Int> kernel_basis(const Matrix<Int>& a) {
  const size_t r = a.rows(), n = a.cols();
  Matrix<Int> m = a;
  Matrix<Int> u = Matrix<Int>::identity(n);
  auto col_axpy = [&](size_t dst, size_t src, const Int& q) {
    // col_dst -= q * col_src, on both m and u
    for (size_t i = 0; i < r; ++i) m(i, dst) -= q * m(i, src);
    for (size_t i = 0; i < n; ++i) u(i, dst) -= q * u(i, src);
  };
  auto col_swap = [&](size_t x, size_t y) {
    if (x == y) return;
    for (size_t i = 0; i < r; ++i) std::swap(m(i, x), m(i, y));
    for (size_t i = 0; i < n; ++i) std::swap(u(i, x), u(i, y));
  };
  size_t lead = 0;
  for (size_t i = 0; i < r && lead < n; ++i) {
    // Euclidean reduction across the active columns of row i until at most
    // one nonzero entry remains.
    for (;;) {
      size_t best = n;
      size_t nz = 0;
      for (size_t j = lead; j < n; ++j) {
        if (sgn(m(i, j)) == 0) continue;
        ++nz;
        if (best == n || IntOps<Int>::abs(m(i, j)) < IntOps<Int>::abs(m(i, best))) best = j;
      }
      if (nz <= 1) {
        if (nz == 1) {
          col_swap(best, lead);
          ++lead;
        }
        break;
      }
      for (size_t j = lead; j < n; ++j) {
        if (j == best || sgn(m(i, j)) == 0) continue;
        col_axpy(j, best, m(i, j) / m(i, best));
      }
    }
  }
  Matrix<Int> ker(n - lead, n);
  for (size_t j = lead; j < n; ++j)
    for (size_t i = 0; i < n; ++i) ker(j - lead, i) = u(i, j);
  return ker;
}

// Basis (as rows) of span(rows of v) intersected with Z^n.  The double
// kernel is automatically saturated; empty input gives an empty basis.
template <class Int>
Matrix<Int> lattice_basis_of_span(const Matrix<Int>& v) {
  if (v.rows() == 0) return Matrix<Int>(0, v.cols());
  return kernel_basis(kernel_basis(v));
}

// Coordinates of t in the row basis b (integer, exact).  Throws Internal if
// t is not in the spanned lattice; callers use it only where membership is
// guaranteed by construction.
template <class Int>
Vec<Int> express_in_basis(const Matrix<Int>& b, const Vec<Int>& t) {
  const size_t k = b.rows(), n = b.cols();
  if (t.size() != n) throw Error(ErrorKind::Internal, "express_in_basis: size mismatch");
  if (k == 0) throw Error(ErrorKind::Internal, "express_in_basis: empty basis");
  Matrix<Int> tmp = b;
  auto ech = detail::echelon_bareiss(tmp);
  if (ech.rank != k) throw Error(ErrorKind::Internal, "express_in_basis: dependent basis");
  Matrix<Int> s(k, k);
  for (size_t c = 0; c < k; ++c)
    for (size_t i = 0; i < k; ++i) s(c, i) = b(i, ech.pivot_cols[c]);
  auto [sn, sd] = invert_with_denominator(s);
  Vec<Int> y(k);
  for (size_t i = 0; i < k; ++i) {
    Int acc = IntOps<Int>::zero();
    for (size_t c = 0; c < k; ++c) acc += sn(i, c) * t[ech.pivot_cols[c]];
    if (sgn(acc % sd) != 0)
      throw Error(ErrorKind::Internal, "express_in_basis: not a lattice member");
    y[i] = acc / sd;
  }
  for (size_t j = 0; j < n; ++j) {
    Int acc = IntOps<Int>::zero();
    for (size_t i = 0; i < k; ++i) acc += y[i] * b(i, j);
    if (acc != t[j])
      throw Error(ErrorKind::Internal, "express_in_basis: not in span");
  }
  return y;
}

}  // namespace polyvol
