#include "ict/torsion.hpp"

#include <cmath>

namespace ict {

double torsion_value::log_value() const {
  return std::log(rat.get_d()) + logres;
}

torsion_value& torsion_value::mul(const torsion_value& o, int sign) {
  if (sign >= 0) {
    rat *= o.rat;
    logres += o.logres;
  } else {
    rat /= o.rat;
    logres -= o.logres;
  }
  rat.canonicalize();
  return *this;
}

based_chain_complex based(const chain_complex& C) {
  auto sb = standard_bases(C);
  std::vector<qmat> h(C.top + 1);
  for (int q = 0; q <= C.top; ++q) h[q] = to_q(sb.homology_reps(q));
  return based(C, h);
}

based_chain_complex based(const chain_complex& C, const std::vector<qmat>& h) {
  based_chain_complex B;
  B.top = C.top;
  B.n.resize(C.top + 1);
  for (int q = 0; q <= C.top; ++q) B.n[q] = C.dim(q);
  B.d.resize(C.top + 1);
  for (int q = 1; q <= C.top; ++q) B.d[q] = to_q(C.bd(q));
  B.h = h;
  B.h.resize(C.top + 1);
  B.G.resize(C.top + 1);
  return B;
}

torsion_value r_torsion(const based_chain_complex& B, const std::vector<std::vector<size_t>>* pivots) {
  int top = B.top;
  std::vector<std::vector<size_t>> J(top + 2);
  for (int q = 1; q <= top; ++q) {
    J[q] = pivots ? (*pivots)[q] : pivot_cols(B.bd(q));
    if (pivots && rank_q(B.bd(q).col_slice(J[q])) != J[q].size())
      throw singular_basis("supplied pivot columns are dependent in degree " + std::to_string(q));
  }
  torsion_value tau;
  for (int q = 0; q <= top; ++q) {
    size_t m = B.dim(q);
    size_t rq = (q >= 1) ? J[q].size() : 0;
    size_t rq1 = (q + 1 <= top) ? J[q + 1].size() : 0;
    size_t hq = (q < int(B.h.size()) && B.h[q].cols) ? B.h[q].cols : 0;
    if (rq + rq1 + hq != m)
      throw rank_mismatch("homology basis rank mismatch in degree " + std::to_string(q));
    qmat T(m, m);
    size_t c = 0;
    if (rq1) {
      qmat img = B.bd(q + 1).col_slice(J[q + 1]);
      for (size_t j = 0; j < rq1; ++j, ++c)
        for (size_t i = 0; i < m; ++i) T(i, c) = img(i, j);
    }
    for (size_t j = 0; j < hq; ++j, ++c)
      for (size_t i = 0; i < m; ++i) T(i, c) = B.h[q](i, j);
    for (size_t j = 0; j < rq; ++j, ++c) T(J[q][j], c) = 1;
    Q det = det_q(T);
    if (det == 0) throw singular_basis("degenerate torsion basis in degree " + std::to_string(q));
    tau.mul({abs(det), 0}, q % 2 ? -1 : 1);
    if (q < int(B.G.size()) && B.G[q].rows) {
      Q g = det_q(B.G[q]);
      if (g <= 0) throw singular_basis("Gram matrix not positive definite in degree " + std::to_string(q));
      tau.logres += (q % 2 ? -0.5 : 0.5) * std::log(g.get_d());
    }
  }
  return tau;
}

namespace {

// Homology coordinates of the cycle columns z: solve [h | bd(pivots)] c = z
// and keep the h-part.
qmat homology_coords(const based_chain_complex& B, int q, const qmat& z) {
  size_t m = B.dim(q), hq = B.h[q].cols;
  std::vector<size_t> J1 = (q + 1 <= B.top) ? pivot_cols(B.bd(q + 1)) : std::vector<size_t>{};
  qmat A(m, hq + J1.size());
  for (size_t j = 0; j < hq; ++j)
    for (size_t i = 0; i < m; ++i) A(i, j) = B.h[q](i, j);
  if (!J1.empty()) {
    qmat img = B.bd(q + 1).col_slice(J1);
    for (size_t j = 0; j < J1.size(); ++j)
      for (size_t i = 0; i < m; ++i) A(i, hq + j) = img(i, j);
  }
  qmat c = solve_any_q(A, z);
  qmat out(hq, z.cols);
  for (size_t i = 0; i < hq; ++i)
    for (size_t j = 0; j < z.cols; ++j) out(i, j) = c(i, j);
  return out;
}

}  // namespace

based_chain_complex les_complex(const exact_triple& T) {
  int top = std::max({T.sub.top, T.total.top, T.quot.top});
  auto hdim = [&](const based_chain_complex& B, int q) -> size_t {
    return (q >= 0 && q <= B.top && q < int(B.h.size())) ? B.h[q].cols : 0;
  };
  // degree 3q = H_q(quot), 3q+1 = H_q(total), 3q+2 = H_q(sub)
  based_chain_complex L;
  L.top = 3 * top + 2;
  L.n.assign(L.top + 1, 0);
  for (int q = 0; q <= top; ++q) {
    L.n[3 * q] = hdim(T.quot, q);
    L.n[3 * q + 1] = hdim(T.total, q);
    L.n[3 * q + 2] = hdim(T.sub, q);
  }
  while (L.top > 0 && L.n[L.top] == 0) --L.top;
  L.n.resize(L.top + 1);
  L.d.assign(L.top + 1, {});
  L.h.assign(L.top + 1, {});
  L.G.assign(L.top + 1, {});
  auto setd = [&](int deg, qmat m) {
    if (deg >= 1 && deg <= L.top) L.d[deg] = std::move(m);
  };
  for (int q = 0; q <= top; ++q) {
    // i_*: H_q(sub) -> H_q(total), degree 3q+2 -> 3q+1 ... boundary of deg 3q+2
    if (hdim(T.sub, q) || hdim(T.total, q)) {
      qmat img(T.total.dim(q), hdim(T.sub, q));
      if (hdim(T.sub, q)) img = T.inj[q] * T.sub.h[q];
      setd(3 * q + 2, hdim(T.total, q) ? homology_coords(T.total, q, img)
                                       : qmat(0, hdim(T.sub, q)));
    }
    // p_*: H_q(total) -> H_q(quot), boundary of deg 3q+1
    if (hdim(T.total, q) || hdim(T.quot, q)) {
      qmat img(T.quot.dim(q), hdim(T.total, q));
      if (hdim(T.total, q)) img = T.proj[q] * T.total.h[q];
      setd(3 * q + 1, hdim(T.quot, q) ? homology_coords(T.quot, q, img)
                                      : qmat(0, hdim(T.total, q)));
    }
    // connecting map: H_q(quot) -> H_{q-1}(sub), boundary of deg 3q
    if (q >= 1 && (hdim(T.quot, q) || hdim(T.sub, q - 1))) {
      size_t k = hdim(T.quot, q);
      qmat y(T.sub.dim(q - 1), k);
      if (k) {
        qmat x = solve_any_q(T.proj[q], T.quot.h[q]);  // lift to the total complex
        qmat dx = T.total.bd(q) * x;
        y = solve_any_q(T.inj[q - 1], dx);  // pull back along the injection
      }
      setd(3 * q, hdim(T.sub, q - 1) ? homology_coords(T.sub, q - 1, y) : qmat(0, k));
    }
  }
  return L;
}

milnor_report milnor_additivity_check(const exact_triple& T) {
  milnor_report r;
  r.sub = r_torsion(T.sub);
  r.total = r_torsion(T.total);
  r.quot = r_torsion(T.quot);
  based_chain_complex L = les_complex(T);
  r.les = r_torsion(L);
  torsion_value prod;
  prod.mul(r.sub).mul(r.quot).mul(r.les);
  r.holds = (prod.rat == r.total.rat) && std::abs(prod.logres - r.total.logres) < 1e-12;
  return r;
}

}  // namespace ict
