#include "ict/mat.hpp"

#include <random>
#include <sstream>
#include <stdexcept>

namespace ict {

template <class T>
std::string mat<T>::str() const {
  std::ostringstream os;
  for (size_t i = 0; i < rows; ++i) {
    for (size_t j = 0; j < cols; ++j) os << (*this)(i, j) << (j + 1 < cols ? " " : "");
    os << "\n";
  }
  return os.str();
}
template struct mat<Z>;
template struct mat<Q>;

qmat to_q(const zmat& m) {
  qmat r(m.rows, m.cols);
  for (size_t i = 0; i < m.a.size(); ++i) r.a[i] = Q(m.a[i]);
  return r;
}

zmat to_z(const qmat& m) {
  zmat r(m.rows, m.cols);
  for (size_t i = 0; i < m.a.size(); ++i) {
    assert(m.a[i].get_den() == 1);
    r.a[i] = m.a[i].get_num();
  }
  return r;
}

Z det_bareiss(const zmat& m0) {
  assert(m0.rows == m0.cols);
  size_t n = m0.rows;
  if (n == 0) return 1;
  zmat m = m0;
  Z prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      for (size_t j = k; j < n; ++j) std::swap(m(k, j), m(p, j));
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) {
        Z t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    prev = m(k, k);
  }
  return sign > 0 ? m(n - 1, n - 1) : Z(-m(n - 1, n - 1));
}

Q det_q(const qmat& m) {
  assert(m.rows == m.cols);
  size_t n = m.rows;
  if (n == 0) return 1;
  zmat zm(n, n);
  Q scale = 1;
  for (size_t j = 0; j < n; ++j) {
    Z lcm = 1;
    for (size_t i = 0; i < n; ++i) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), m(i, j).get_den().get_mpz_t());
    for (size_t i = 0; i < n; ++i) {
      Q v = m(i, j) * Q(lcm);
      v.canonicalize();
      zm(i, j) = v.get_num();
    }
    scale /= Q(lcm);
  }
  Q d = Q(det_bareiss(zm)) * scale;
  d.canonicalize();
  return d;
}

namespace {
// Row-echelon elimination; returns pivot column list. If `keep` nonnull the
// reduced matrix is stored there.
std::vector<size_t> echelon(qmat& m) {
  std::vector<size_t> piv;
  size_t r = 0;
  for (size_t c = 0; c < m.cols && r < m.rows; ++c) {
    size_t p = r;
    while (p < m.rows && m(p, c) == 0) ++p;
    if (p == m.rows) continue;
    if (p != r)
      for (size_t j = 0; j < m.cols; ++j) std::swap(m(r, j), m(p, j));
    Q inv = 1 / m(r, c);
    for (size_t j = c; j < m.cols; ++j) m(r, j) *= inv;
    for (size_t i = 0; i < m.rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      Q f = m(i, c);
      for (size_t j = c; j < m.cols; ++j) m(i, j) -= f * m(r, j);
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}
}  // namespace

size_t rank_q(qmat m) { return echelon(m).size(); }

std::vector<size_t> pivot_cols(const qmat& m0) {
  qmat m = m0;
  return echelon(m);
}

qmat solve_q(const qmat& A, const qmat& b) {
  assert(A.rows == b.rows);
  qmat aug(A.rows, A.cols + b.cols);
  for (size_t i = 0; i < A.rows; ++i) {
    for (size_t j = 0; j < A.cols; ++j) aug(i, j) = A(i, j);
    for (size_t j = 0; j < b.cols; ++j) aug(i, A.cols + j) = b(i, j);
  }
  auto piv = echelon(aug);
  qmat x(A.cols, b.cols);
  size_t r = 0;
  for (size_t c : piv) {
    if (c >= A.cols) throw std::runtime_error("solve_q: inconsistent system");
    for (size_t j = 0; j < b.cols; ++j) x(c, j) = aug(r, A.cols + j);
    ++r;
  }
  if (piv.size() != A.cols) {
    // Full column rank expected for all call sites.
    throw std::runtime_error("solve_q: rank-deficient system");
  }
  return x;
}

qmat solve_any_q(const qmat& A, const qmat& b) {
  assert(A.rows == b.rows);
  qmat aug(A.rows, A.cols + b.cols);
  for (size_t i = 0; i < A.rows; ++i) {
    for (size_t j = 0; j < A.cols; ++j) aug(i, j) = A(i, j);
    for (size_t j = 0; j < b.cols; ++j) aug(i, A.cols + j) = b(i, j);
  }
  auto piv = echelon(aug);
  qmat x(A.cols, b.cols);
  size_t r = 0;
  for (size_t c : piv) {
    if (c >= A.cols) throw std::runtime_error("solve_any_q: inconsistent system");
    for (size_t j = 0; j < b.cols; ++j) x(c, j) = aug(r, A.cols + j);
    ++r;
  }
  return x;
}

qmat kernel_q(const qmat& m0) {
  qmat m = m0;
  auto piv = echelon(m);
  std::vector<size_t> free_cols;
  {
    size_t pi = 0;
    for (size_t c = 0; c < m.cols; ++c) {
      if (pi < piv.size() && piv[pi] == c)
        ++pi;
      else
        free_cols.push_back(c);
    }
  }
  qmat k(m.cols, free_cols.size());
  for (size_t fj = 0; fj < free_cols.size(); ++fj) {
    size_t c = free_cols[fj];
    k(c, fj) = 1;
    for (size_t r = 0; r < piv.size(); ++r) k(piv[r], fj) = -m(r, c);
  }
  return k;
}

zmat inv_unimodular(const zmat& u) {
  qmat inv = solve_q(to_q(u), to_q(zmat::identity(u.rows)));
  return to_z(inv);
}

zmat random_unimodular(size_t n, unsigned long seed) {
  std::mt19937_64 rng(seed);
  zmat u = zmat::identity(n);
  if (n < 2) return u;
  std::uniform_int_distribution<size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (size_t step = 0; step < 4 * n; ++step) {
    size_t i = pick(rng), j = pick(rng);
    if (i == j) continue;
    int c = coef(rng);
    if (c == 0) c = 1;
    for (size_t k = 0; k < n; ++k) u(i, k) += c * u(j, k);
  }
  return u;
}

}  // namespace ict
