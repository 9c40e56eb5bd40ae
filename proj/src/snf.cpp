#include "ict/snf.hpp"

#include <algorithm>

namespace ict {

namespace {

void row_add(zmat& M, zmat& U, size_t dst, size_t src, const Z& c) {
  for (size_t j = 0; j < M.cols; ++j) M(dst, j) += c * M(src, j);
  for (size_t j = 0; j < U.cols; ++j) U(dst, j) += c * U(src, j);
}
void col_add(zmat& M, zmat& V, size_t dst, size_t src, const Z& c) {
  for (size_t i = 0; i < M.rows; ++i) M(i, dst) += c * M(i, src);
  for (size_t i = 0; i < V.rows; ++i) V(i, dst) += c * V(i, src);
}
void row_swap(zmat& M, zmat& U, size_t a, size_t b) {
  if (a == b) return;
  for (size_t j = 0; j < M.cols; ++j) std::swap(M(a, j), M(b, j));
  for (size_t j = 0; j < U.cols; ++j) std::swap(U(a, j), U(b, j));
}
void col_swap(zmat& M, zmat& V, size_t a, size_t b) {
  if (a == b) return;
  for (size_t i = 0; i < M.rows; ++i) std::swap(M(i, a), M(i, b));
  for (size_t i = 0; i < V.rows; ++i) std::swap(V(i, a), V(i, b));
}

// Quotient minimizing |a - q*b|.
Z nearest_quotient(const Z& a, const Z& b) {
  Z q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (2 * abs(r) > abs(b)) q += 1;  // floor remainder has the divisor's sign

  return q;
}

// Smallest nonzero |entry| in the trailing submatrix, ties by row-major order.
bool find_pivot(const zmat& M, size_t t, size_t& pi, size_t& pj) {
  bool found = false;
  Z best;
  for (size_t i = t; i < M.rows; ++i)
    for (size_t j = t; j < M.cols; ++j) {
      if (M(i, j) == 0) continue;
      Z v = abs(M(i, j));
      if (!found || v < best) {
        found = true;
        best = v;
        pi = i;
        pj = j;
      }
    }
  return found;
}

}  // namespace

smith_decomposition smith_normal_form(const zmat& M0) {
  smith_decomposition s;
  size_t m = M0.rows, n = M0.cols;
  zmat M = M0;
  zmat U = zmat::identity(m), V = zmat::identity(n);
  size_t t = 0;
  while (t < std::min(m, n)) {
    size_t pi, pj;
    if (!find_pivot(M, t, pi, pj)) break;
    row_swap(M, U, t, pi);
    col_swap(M, V, t, pj);
    // Reduce column t and row t with nearest-integer quotients; whenever a
    // nonzero remainder survives, re-select the globally smallest pivot and
    // start over, so every pass reduces with the smallest available entry.
    bool dirty = false;
    for (size_t i = t + 1; i < m; ++i) {
      if (M(i, t) == 0) continue;
      Z q = nearest_quotient(M(i, t), M(t, t));
      row_add(M, U, i, t, -q);
      if (M(i, t) != 0) dirty = true;
    }
    for (size_t j = t + 1; j < n; ++j) {
      if (M(t, j) == 0) continue;
      Z q = nearest_quotient(M(t, j), M(t, t));
      col_add(M, V, j, t, -q);
      if (M(t, j) != 0) dirty = true;
    }
    if (dirty) continue;
    // enforce divisibility of the remaining block by the pivot
    bool redo = false;
    for (size_t i = t + 1; i < m && !redo; ++i)
      for (size_t j = t + 1; j < n && !redo; ++j)
        if (M(i, j) % M(t, t) != 0) {
          row_add(M, U, t, i, 1);
          redo = true;
        }
    if (redo) continue;
    if (M(t, t) < 0) {
      for (size_t j = 0; j < n; ++j) M(t, j) = -M(t, j);
      for (size_t j = 0; j < m; ++j) U(t, j) = -U(t, j);
    }
    ++t;
  }
  s.rank = t;
  s.U = std::move(U);
  s.V = std::move(V);
  s.D = std::move(M);
  return s;
}

std::vector<homology_group> homology(const chain_complex& C) {
  std::vector<homology_group> h(C.top + 1);
  std::vector<smith_decomposition> s(C.top + 2);
  for (int q = 1; q <= C.top; ++q) s[q] = smith_normal_form(C.bd(q));
  for (int q = 0; q <= C.top; ++q) {
    size_t rq = (q >= 1) ? s[q].rank : 0;
    size_t rq1 = (q + 1 <= C.top) ? s[q + 1].rank : 0;
    h[q].rank = C.dim(q) - rq - rq1;
    if (q + 1 <= C.top)
      for (auto& f : s[q + 1].factors())
        if (f != 1) h[q].torsion.push_back(f);
  }
  return h;
}

zmat standard_basis_data::cycles(int q) const {
  std::vector<size_t> idx;
  for (size_t j = u[q]; j < e[q].cols; ++j) idx.push_back(j);
  return e[q].col_slice(idx);
}

zmat standard_basis_data::homology_reps(int q) const {
  std::vector<size_t> idx;
  for (size_t j = u[q]; j < u[q] + h[q].rank; ++j) idx.push_back(j);
  return e[q].col_slice(idx);
}

standard_basis_data standard_bases(const chain_complex& C) {
  standard_basis_data out;
  int top = C.top;
  out.u.assign(top + 1, 0);
  out.k.assign(top + 1, {});
  out.h.assign(top + 1, {});
  out.e.assign(top + 1, {});

  // Walk up the degrees keeping an integral basis Z of the cycle lattice;
  // at each step express bd_q in that basis, take its Smith form, and split
  // the previous cycle basis into hit vectors and free representatives.
  std::vector<zmat> b(top + 1), nh(top + 1), hit(top + 1);
  zmat Zq = zmat::identity(C.dim(0));
  for (int q = 1; q <= top + 1; ++q) {
    zmat A;  // bd_q in the cycle basis of degree q-1
    smith_decomposition s;
    if (q <= top) {
      qmat Aq = solve_q(to_q(Zq), to_q(C.bd(q)));
      A = to_z(Aq);  // saturation of the cycle lattice makes this integral
      s = smith_normal_form(A);
    }
    size_t uq = s.rank;
    // reorder the degree-(q-1) cycle basis: the first uq columns of
    // Z * U^{-1} are hit (placed last), the rest are homology representatives
    zmat zt = Zq * inv_unimodular(q <= top ? s.U : zmat::identity(Zq.cols));
    std::vector<size_t> hidx, nidx;
    for (size_t j = 0; j < uq; ++j) hidx.push_back(j);
    for (size_t j = uq; j < zt.cols; ++j) nidx.push_back(j);
    hit[q - 1] = zt.col_slice(hidx);
    nh[q - 1] = zt.col_slice(nidx);
    out.h[q - 1].rank = nidx.size();
    for (auto& f : (q <= top ? s.factors() : std::vector<Z>{}))
      if (f != 1) out.h[q - 1].torsion.push_back(f);
    if (q <= top) {
      out.u[q] = uq;
      auto f = s.factors();
      out.k[q - 1].assign(f.begin(), f.end());
      std::vector<size_t> bidx, zidx;
      for (size_t j = 0; j < uq; ++j) bidx.push_back(j);
      for (size_t j = uq; j < s.V.cols; ++j) zidx.push_back(j);
      b[q] = s.V.col_slice(bidx);
      Zq = s.V.col_slice(zidx);
    }
  }
  for (int q = 0; q <= top; ++q) {
    size_t m = C.dim(q);
    zmat eq(m, m);
    size_t c = 0;
    auto put = [&](const zmat& blk) {
      for (size_t j = 0; j < blk.cols; ++j, ++c)
        for (size_t i = 0; i < m; ++i) eq(i, c) = blk(i, j);
    };
    if (q >= 1) put(b[q]);
    put(nh[q]);
    put(hit[q]);
    assert(c == m);
    out.e[q] = std::move(eq);
  }
  return out;
}

}  // namespace ict
