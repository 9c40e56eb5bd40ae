#pragma once
#include <gmpxx.h>
#include <cassert>
#include <cstddef>
#include <string>
#include <vector>

namespace ict {

using Z = mpz_class;
using Q = mpq_class;

// Dense row-major matrix over Z or Q.
template <class T>
struct mat {
  size_t rows = 0, cols = 0;
  std::vector<T> a;

  mat() = default;
  mat(size_t r, size_t c) : rows(r), cols(c), a(r * c) {}
  T& operator()(size_t i, size_t j) { return a[i * cols + j]; }
  const T& operator()(size_t i, size_t j) const { return a[i * cols + j]; }

  static mat identity(size_t n) {
    mat m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  bool operator==(const mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
  bool is_zero() const {
    for (auto& x : a)
      if (x != 0) return false;
    return true;
  }
  mat transposed() const {
    mat t(cols, rows);
    for (size_t i = 0; i < rows; ++i)
      for (size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
  }
  mat col_slice(const std::vector<size_t>& idx) const {
    mat s(rows, idx.size());
    for (size_t i = 0; i < rows; ++i)
      for (size_t j = 0; j < idx.size(); ++j) s(i, j) = (*this)(i, idx[j]);
    return s;
  }
  std::string str() const;
};

using zmat = mat<Z>;
using qmat = mat<Q>;

template <class T>
mat<T> operator*(const mat<T>& x, const mat<T>& y) {
  assert(x.cols == y.rows);
  mat<T> r(x.rows, y.cols);
  for (size_t i = 0; i < x.rows; ++i)
    for (size_t k = 0; k < x.cols; ++k) {
      const T& v = x(i, k);
      if (v == 0) continue;
      for (size_t j = 0; j < y.cols; ++j) r(i, j) += v * y(k, j);
    }
  return r;
}

qmat to_q(const zmat& m);
zmat to_z(const qmat& m);  // asserts integrality

// Determinant of a square integer matrix, fraction-free (Bareiss).
Z det_bareiss(const zmat& m);
// Determinant over Q: clears denominators columnwise, then Bareiss.
Q det_q(const qmat& m);

size_t rank_q(qmat m);
// Column indices of a lexicographically-first maximal independent set.
std::vector<size_t> pivot_cols(const qmat& m);
// Solve A x = b columnwise for every column of b; requires full column rank
// and solvability. Returns x with A.cols rows.
qmat solve_q(const qmat& A, const qmat& b);
// Any particular solution of A x = b (free variables set to 0); throws if
// inconsistent.
qmat solve_any_q(const qmat& A, const qmat& b);
// Right kernel basis over Q (columns).
qmat kernel_q(const qmat& m);

// Inverse of a unimodular integer matrix (integer entries).
zmat inv_unimodular(const zmat& u);

// Deterministic pseudo-random unimodular matrix (product of shears/swaps).
zmat random_unimodular(size_t n, unsigned long seed);

}  // namespace ict
