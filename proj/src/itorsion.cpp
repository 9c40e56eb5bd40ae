#include "ict/itorsion.hpp"

#include <cmath>

namespace ict {

namespace {

// det of the homology coordinates of the columns h in the standard basis n_q,
// modulo boundaries.
Q det_over_n(const chain_complex& W, const standard_basis_data& sb, int q, const qmat& h) {
  size_t r = sb.h[q].rank;
  if (r == 0) return 1;
  if (h.cols != r) throw rank_mismatch("homology basis rank mismatch in degree " + std::to_string(q));
  qmat n = to_q(sb.homology_reps(q));
  std::vector<size_t> J;
  if (q + 1 <= W.top) J = pivot_cols(to_q(W.bd(q + 1)));
  qmat A(W.dim(q), r + J.size());
  for (size_t j = 0; j < r; ++j)
    for (size_t i = 0; i < A.rows; ++i) A(i, j) = n(i, j);
  if (!J.empty()) {
    qmat img = to_q(W.bd(q + 1)).col_slice(J);
    for (size_t j = 0; j < J.size(); ++j)
      for (size_t i = 0; i < A.rows; ++i) A(i, r + j) = img(i, j);
  }
  qmat c = solve_any_q(A, h);
  qmat top(r, r);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < r; ++j) top(i, j) = c(i, j);
  return det_q(top);
}

qmat default_h(const standard_basis_data& sb, int q) { return to_q(sb.homology_reps(q)); }

}  // namespace

itorsion_result intersection_torsion_cone(const chain_complex& W, const perversity& p, bool relative,
                                          const cone_torsion_data& data) {
  auto X = intersection_cone_complex(W, p, relative);
  auto sb = standard_bases(W);
  int m = W.top, a = X.a;

  auto h_of = [&](int q) -> qmat {
    if (q < int(data.h.size()) && data.h[q].cols) return data.h[q];
    return default_h(sb, q);
  };
  auto has_G = [&](int q) { return q < int(data.G.size()) && data.G[q].rows; };
  auto lg = [&](int q) -> double {
    return q < int(data.log_gamma.size()) ? data.log_gamma[q] : 0.0;
  };
  bool with_gamma = !data.log_gamma.empty();

  itorsion_result res;
  int q0 = relative ? a - 1 : 0;
  int q1 = relative ? m : a - 2;
  for (int q = q0; q <= q1; ++q) {
    int sign = (q % 2 == 0) ? 1 : -1;
    if (relative) sign = -sign;
    Q dq = det_over_n(W, sb, q, h_of(q));
    torsion_value f{abs(dq) * Q(sb.h[q].torsion_order()), 0};
    res.closed_form.mul(f, sign);
    if (has_G(q)) res.closed_form.logres += sign * 0.5 * std::log(det_q(data.G[q]).get_d());
    if (with_gamma) {
      double r = double(sb.h[q].rank);
      // absolute Gram gamma_q G_q at degree q; relative gamma_{m-q}^{-1} G_q
      // at degree q+1 -- both contribute (+/-)^q (r/2) log gamma.
      res.closed_form.logres += (q % 2 == 0 ? 1 : -1) * 0.5 * r * lg(relative ? m - q : q);
    }
  }

  based_chain_complex B;
  B.top = X.C.top;
  B.n.resize(B.top + 1);
  for (int q = 0; q <= B.top; ++q) B.n[q] = X.C.dim(q);
  B.d.resize(B.top + 1);
  for (int q = 1; q <= B.top; ++q) B.d[q] = to_q(X.C.bd(q));
  B.h.resize(B.top + 1);
  B.G.resize(B.top + 1);
  if (!relative) {
    for (int q = 0; q <= a - 2; ++q) {
      B.h[q] = h_of(q);
      if (has_G(q)) B.G[q] = data.G[q];
    }
  } else {
    for (int q = a - 1; q <= m; ++q) {
      if (q == a - 1)
        B.h[a] = solve_q(to_q(X.Zb), h_of(q));
      else
        B.h[q + 1] = h_of(q);
      if (has_G(q)) B.G[q + 1] = data.G[q];
    }
  }
  res.direct = r_torsion(B);
  if (with_gamma)
    for (int q = q0; q <= q1; ++q)
      res.direct.logres += (q % 2 == 0 ? 1 : -1) * 0.5 * double(sb.h[q].rank) * lg(relative ? m - q : q);

  res.agree = (res.closed_form.rat == res.direct.rat) &&
              std::abs(res.closed_form.logres - res.direct.logres) < 1e-12;
  if (!res.agree)
    throw closed_form_mismatch("cone torsion closed form disagrees with the direct computation");
  return res;
}

pseudomanifold_torsion_result intersection_torsion_pseudomanifold(const chain_inclusion& inc,
                                                                  const perversity& p) {
  auto X = intersection_mapping_cone(inc, p);
  auto sub = intersection_cone_complex(inc.source, p, false);
  const chain_complex& W = inc.source;
  const chain_complex& D = inc.target;
  int a = X.a;
  size_t z = X.Zb.cols;

  // embed the cone complex of the section into the mapping cone
  std::vector<qmat> inj(X.C.top + 1);
  auto wdim = [&](int q) { return q >= 0 && q <= W.top ? W.dim(q) : size_t(0); };
  for (int q = 0; q <= X.C.top; ++q) {
    size_t sdim = q <= sub.C.top ? sub.C.dim(q) : 0;
    qmat J(X.C.dim(q), sdim);
    if (q < a) {
      if (q <= W.top)
        for (size_t j = 0; j < wdim(q); ++j)
          for (size_t i = 0; i < D.dim(q); ++i) J(i, j) = inc.inj[q](i, j);
    } else if (q == a) {
      for (size_t j = 0; j < z; ++j) J(j, j) = 1;
      for (size_t j = 0; j < wdim(a); ++j)
        for (size_t i = 0; i < D.dim(a); ++i) J(z + i, z + j) = inc.inj[a](i, j);
    } else {
      for (size_t j = 0; j < wdim(q - 1); ++j) J(j, j) = 1;
      if (wdim(q))
        for (size_t j = 0; j < wdim(q); ++j)
          for (size_t i = 0; i < D.dim(q); ++i) J(wdim(q - 1) + i, wdim(q - 1) + j) = inc.inj[q](i, j);
    }
    inj[q] = std::move(J);
  }

  // quotient coordinates: those not hit by the embedding
  std::vector<std::vector<size_t>> kept(X.C.top + 1);
  for (int q = 0; q <= X.C.top; ++q) {
    std::vector<bool> hit(X.C.dim(q), false);
    for (size_t j = 0; j < inj[q].cols; ++j)
      for (size_t i = 0; i < inj[q].rows; ++i)
        if (inj[q](i, j) != 0) hit[i] = true;
    for (size_t i = 0; i < X.C.dim(q); ++i)
      if (!hit[i]) kept[q].push_back(i);
  }
  chain_complex quot;
  quot.top = X.C.top;
  quot.labels.assign(quot.top + 1, {});
  quot.d.assign(quot.top + 1, {});
  for (int q = 0; q <= quot.top; ++q)
    for (size_t i : kept[q]) quot.labels[q].push_back(X.C.labels[q][i]);
  for (int q = 1; q <= quot.top; ++q) {
    zmat d(kept[q - 1].size(), kept[q].size());
    for (size_t i = 0; i < kept[q - 1].size(); ++i)
      for (size_t j = 0; j < kept[q].size(); ++j) d(i, j) = X.C.bd(q)(kept[q - 1][i], kept[q][j]);
    quot.d[q] = std::move(d);
  }
  quot.check();

  exact_triple T;
  T.sub = based(sub.C);
  T.total = based(X.C);
  T.quot = based(quot);
  T.inj = inj;
  T.proj.resize(X.C.top + 1);
  for (int q = 0; q <= X.C.top; ++q) {
    qmat P(kept[q].size(), X.C.dim(q));
    for (size_t i = 0; i < kept[q].size(); ++i) P(i, kept[q][i]) = 1;
    T.proj[q] = std::move(P);
  }

  milnor_report rep = milnor_additivity_check(T);
  pseudomanifold_torsion_result out;
  out.cone_factor = rep.sub;
  out.relative_factor = rep.quot;
  out.les_factor = rep.les;
  out.product.mul(rep.sub).mul(rep.quot).mul(rep.les);
  out.direct = rep.total;
  out.agree = rep.holds;
  if (!out.agree)
    throw closed_form_mismatch("pseudomanifold torsion factorization disagrees with the direct value");
  return out;
}

torsion_duality_report torsion_duality_check(const chain_complex& W, const perversity& p,
                                             const cone_torsion_data& data) {
  torsion_duality_report rep;
  rep.abs = intersection_torsion_cone(W, p, false, data).direct;
  rep.rel = intersection_torsion_cone(W, p.complement(), true, data).direct;
  int m = W.top;
  if (m % 2 == 0)
    rep.holds = rep.abs.rat == rep.rel.rat && std::abs(rep.abs.logres - rep.rel.logres) < 1e-12;
  else
    rep.holds = rep.abs.rat * rep.rel.rat == 1 && std::abs(rep.abs.logres + rep.rel.logres) < 1e-12;
  if (!rep.holds) throw duality_violation("torsion duality identity fails");
  return rep;
}

}  // namespace ict
