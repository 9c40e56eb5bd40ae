#include "ict/intersection.hpp"

#include <algorithm>

namespace ict {

void perversity::validate() const {
  if (n < 2 || int(v.size()) != n - 1) throw invalid_perversity("perversity needs values p_2..p_n");
  if (v[0] != 0) throw invalid_perversity("p_2 must be 0");
  for (size_t i = 1; i < v.size(); ++i)
    if (v[i] != v[i - 1] && v[i] != v[i - 1] + 1)
      throw invalid_perversity("perversity steps must be 0 or 1");
}

perversity perversity::zero(int n) {
  perversity p;
  p.n = n;
  p.v.assign(n - 1, 0);
  p.validate();
  return p;
}

perversity perversity::top(int n) {
  perversity p;
  p.n = n;
  for (int j = 2; j <= n; ++j) p.v.push_back(j - 2);
  p.validate();
  return p;
}

perversity perversity::lower_middle(int n) {
  perversity p;
  p.n = n;
  for (int j = 2; j <= n; ++j) p.v.push_back(j / 2 - 1);
  p.validate();
  return p;
}

perversity perversity::custom(int n, std::vector<int> vals) {
  perversity p;
  p.n = n;
  p.v = std::move(vals);
  p.validate();
  return p;
}

perversity perversity::complement() const {
  perversity p;
  p.n = n;
  for (int j = 2; j <= n; ++j) p.v.push_back(j - at(j) - 2);
  p.validate();
  return p;
}

bool allowable(const cw_complex& K, const std::string& cell_id, const perversity& p) {
  auto it = K.index.find(cell_id);
  if (it == K.index.end()) throw validation_error("unknown cell: " + cell_id);
  const cw_cell& c = K.cells[it->second];
  // closure of the cell
  std::set<std::string> closure{cell_id};
  std::vector<std::string> stack{cell_id};
  while (!stack.empty()) {
    const cw_cell& cur = K.cells[K.index.at(stack.back())];
    stack.pop_back();
    for (auto& [fid, co] : cur.bd)
      if (closure.insert(fid).second) stack.push_back(fid);
  }
  int sdim = -1;  // -1 plays the role of dim(empty) = -infinity here
  for (auto& id : closure)
    if (K.singular.count(id)) sdim = std::max(sdim, K.cells[K.index.at(id)].dim);
  if (sdim < 0) return true;
  return sdim <= c.dim - p.n + p.at(p.n);
}

namespace {

zmat solve_in_kernel(const zmat& Zb, const zmat& bd) {
  return to_z(solve_q(to_q(Zb), to_q(bd)));  // integral: the kernel lattice is saturated
}

std::vector<std::string> prefixed(const std::vector<std::string>& l, const std::string& pre) {
  std::vector<std::string> out;
  for (auto& s : l) out.push_back(pre + s);
  return out;
}

}  // namespace

intersection_chain_complex intersection_cone_complex(const chain_complex& W, const perversity& p,
                                                     bool relative, const zmat* Zbasis) {
  p.validate();
  int m = W.top, n = m + 1;
  if (p.n != n) throw invalid_perversity("perversity top dimension must match the cone dimension");
  int a = p.cutoff();
  if (a < 2 || a > n) throw invalid_perversity("cutoff out of range");

  auto sb = standard_bases(W);
  zmat Zb = Zbasis ? *Zbasis : sb.cycles(a - 1);
  if (Zbasis && (Zb.rows != W.dim(a - 1) || Zb.cols != sb.cycles(a - 1).cols ||
                 !(W.bd(a - 1).rows ? (W.bd(a - 1) * Zb).is_zero() : true)))
    throw validation_error("custom cycle basis has the wrong shape or is not a basis of cycles");

  intersection_chain_complex X;
  X.kind = relative ? intersection_chain_complex::cone_rel : intersection_chain_complex::cone_abs;
  X.a = a;
  X.n = n;
  X.W = W;
  X.D = W;
  X.Zb = Zb;

  chain_complex& C = X.C;
  C.top = n;
  C.labels.assign(n + 1, {});
  std::vector<std::string> zlab;
  for (size_t j = 0; j < Zb.cols; ++j) zlab.push_back("z" + std::to_string(j));
  auto wdim = [&](int q) { return q >= 0 && q <= m ? W.dim(q) : size_t(0); };
  auto wlab = [&](int q) { return q >= 0 && q <= m ? W.labels[q] : std::vector<std::string>{}; };

  if (!relative) {
    for (int q = 0; q < a; ++q) C.labels[q] = wlab(q);
    C.labels[a] = zlab;
    for (auto& s : wlab(a)) C.labels[a].push_back(s);
    for (int q = a + 1; q <= n; ++q) {
      C.labels[q] = prefixed(wlab(q - 1), "@");
      for (auto& s : wlab(q)) C.labels[q].push_back(s);
    }
  } else {
    C.labels[a] = zlab;
    for (int q = a + 1; q <= n; ++q) C.labels[q] = prefixed(wlab(q - 1), "@");
  }
  C.d.assign(n + 1, {});

  zmat A;  // bd_a of the section written in the cycle basis
  if (wdim(a)) A = solve_in_kernel(Zb, W.bd(a));

  for (int q = 1; q <= n; ++q) {
    size_t rows = C.labels[q - 1].size(), cols = C.labels[q].size();
    zmat d(rows, cols);
    auto copy = [&](const zmat& blk, size_t r0, size_t c0, int sign = 1) {
      for (size_t i = 0; i < blk.rows; ++i)
        for (size_t j = 0; j < blk.cols; ++j) d(r0 + i, c0 + j) = sign * blk(i, j);
    };
    if (!relative) {
      if (q < a) {
        copy(W.bd(q), 0, 0);
      } else if (q == a) {
        copy(Zb, 0, 0);
        if (wdim(a)) copy(W.bd(a), 0, Zb.cols, -1);
      } else if (q == a + 1) {
        if (wdim(a)) {
          copy(A, 0, 0);
          for (size_t i = 0; i < wdim(a); ++i) d(Zb.cols + i, i) = 1;
          if (wdim(a + 1)) copy(W.bd(a + 1), Zb.cols, wdim(a), -1);
        }
      } else {
        copy(W.bd(q - 1), 0, 0);
        for (size_t i = 0; i < wdim(q - 1); ++i) d(wdim(q - 2) + i, i) = 1;
        if (wdim(q)) copy(W.bd(q), wdim(q - 2), wdim(q - 1), -1);
      }
    } else {
      if (q == a + 1 && wdim(a)) copy(A, 0, 0);
      if (q > a + 1) copy(W.bd(q - 1), 0, 0);
    }
    C.d[q] = std::move(d);
  }
  C.check();
  return X;
}

intersection_chain_complex intersection_mapping_cone(const chain_inclusion& inc, const perversity& p) {
  p.validate();
  const chain_complex& W = inc.source;
  const chain_complex& D = inc.target;
  int m = W.top, n = m + 1;
  if (p.n != n) throw invalid_perversity("perversity top dimension must match the cone dimension");
  int a = p.cutoff();
  if (a < 2 || a > n) throw invalid_perversity("cutoff out of range");

  auto sb = standard_bases(W);
  zmat Zb = sb.cycles(a - 1);

  intersection_chain_complex X;
  X.kind = intersection_chain_complex::map_cone;
  X.a = a;
  X.n = n;
  X.W = W;
  X.D = D;
  X.Zb = Zb;
  X.inj = inc.inj;

  chain_complex& C = X.C;
  C.top = std::max(n, D.top);
  C.labels.assign(C.top + 1, {});
  auto wdim = [&](int q) { return q >= 0 && q <= m ? W.dim(q) : size_t(0); };
  auto ddim = [&](int q) { return q >= 0 && q <= D.top ? D.dim(q) : size_t(0); };
  for (int q = 0; q < a; ++q)
    if (q <= D.top) C.labels[q] = D.labels[q];
  for (size_t j = 0; j < Zb.cols; ++j) C.labels[a].push_back("z" + std::to_string(j));
  if (a <= D.top)
    for (auto& s : D.labels[a]) C.labels[a].push_back(s);
  for (int q = a + 1; q <= C.top; ++q) {
    if (q - 1 <= m) C.labels[q] = prefixed(W.labels[q - 1], "@");
    if (q <= D.top)
      for (auto& s : D.labels[q]) C.labels[q].push_back(s);
  }
  C.d.assign(C.top + 1, {});

  zmat A;
  if (wdim(a)) A = solve_in_kernel(Zb, W.bd(a));

  for (int q = 1; q <= C.top; ++q) {
    size_t rows = C.labels[q - 1].size(), cols = C.labels[q].size();
    zmat d(rows, cols);
    auto copy = [&](const zmat& blk, size_t r0, size_t c0, int sign = 1) {
      for (size_t i = 0; i < blk.rows; ++i)
        for (size_t j = 0; j < blk.cols; ++j) d(r0 + i, c0 + j) = sign * blk(i, j);
    };
    if (q < a) {
      copy(D.bd(q), 0, 0);
    } else if (q == a) {
      // bd(z (+) y) = i(Z z) - bd^D y
      copy(inc.inj[a - 1] * Zb, 0, 0);
      if (ddim(a)) copy(D.bd(a), 0, Zb.cols, -1);
    } else if (q == a + 1) {
      if (wdim(a)) {
        copy(A, 0, 0);
        copy(inc.inj[a], Zb.cols, 0);
      }
      if (ddim(a + 1)) copy(D.bd(a + 1), Zb.cols, wdim(a), -1);
    } else {
      size_t wrows = wdim(q - 2);
      if (wdim(q - 1)) {
        if (q - 2 >= 0 && wrows) copy(W.bd(q - 1), 0, 0);
        copy(inc.inj[q - 1], wrows, 0);
      }
      if (ddim(q)) copy(D.bd(q), wrows, wdim(q - 1), -1);
    }
    C.d[q] = std::move(d);
  }
  C.check();
  return X;
}

std::vector<homology_group> intersection_homology(const intersection_chain_complex& X) {
  auto H = homology(X.C);
  auto HW = homology(X.W);
  int a = X.a, n = X.n, m = X.W.top;
  auto expect_eq = [&](int q, const homology_group& want) {
    const homology_group got = q <= X.C.top ? H[q] : homology_group{};
    if (!(got == want))
      throw closed_form_mismatch("closed form disagrees in degree " + std::to_string(q));
  };
  auto hw = [&](int q) { return q >= 0 && q <= m ? HW[q] : homology_group{}; };
  switch (X.kind) {
    case intersection_chain_complex::cone_abs:
      for (int q = 0; q <= n; ++q) expect_eq(q, q <= a - 2 ? hw(q) : homology_group{});
      break;
    case intersection_chain_complex::cone_rel:
      for (int q = 0; q <= n; ++q) expect_eq(q, q >= a ? hw(q - 1) : homology_group{});
      break;
    case intersection_chain_complex::map_cone: {
      auto HD = homology(X.D);
      // relative complex of (D, W): delete the coordinates in the image of
      // the inclusion (signed unit columns)
      std::vector<std::vector<size_t>> kept(X.D.top + 1);
      for (int q = 0; q <= X.D.top; ++q) {
        std::vector<bool> image(X.D.dim(q), false);
        if (q <= X.W.top)
          for (size_t j = 0; j < X.W.dim(q); ++j)
            for (size_t i = 0; i < X.D.dim(q); ++i)
              if (X.inj[q](i, j) != 0) image[i] = true;
        for (size_t i = 0; i < X.D.dim(q); ++i)
          if (!image[i]) kept[q].push_back(i);
      }
      chain_complex R;
      R.top = X.D.top;
      R.labels.assign(R.top + 1, {});
      R.d.assign(R.top + 1, {});
      for (int q = 0; q <= R.top; ++q)
        for (size_t i : kept[q]) R.labels[q].push_back(X.D.labels[q][i]);
      for (int q = 1; q <= R.top; ++q) {
        zmat d(kept[q - 1].size(), kept[q].size());
        for (size_t i = 0; i < kept[q - 1].size(); ++i)
          for (size_t j = 0; j < kept[q].size(); ++j) d(i, j) = X.D.bd(q)(kept[q - 1][i], kept[q][j]);
        R.d[q] = std::move(d);
      }
      R.check();
      auto HR = homology(R);
      auto hr = [&](int q) { return q >= 0 && q <= R.top ? HR[q] : homology_group{}; };
      auto hd = [&](int q) { return q >= 0 && q <= X.D.top ? HD[q] : homology_group{}; };
      int topq = X.C.top;
      for (int q = 0; q <= topq; ++q) {
        if (q <= a - 2) {
          expect_eq(q, hd(q));
        } else if (q == a - 1) {
          // rank of the image of H_{a-1}(D) -> H_{a-1}(D, W)
          auto sbD = standard_bases(X.D);
          qmat hD = to_q(sbD.homology_reps(a - 1));
          size_t nk = kept[a - 1].size();
          qmat proj(nk, hD.cols);
          for (size_t i = 0; i < nk; ++i)
            for (size_t j = 0; j < hD.cols; ++j) proj(i, j) = hD(kept[a - 1][i], j);
          size_t rb = 0, rall = proj.cols ? 0 : 0;
          qmat brel(nk, a <= R.top ? R.dim(a) : 0);
          if (a <= R.top) brel = to_q(R.bd(a));
          rb = rank_q(brel);
          qmat both(nk, proj.cols + brel.cols);
          for (size_t i = 0; i < nk; ++i) {
            for (size_t j = 0; j < proj.cols; ++j) both(i, j) = proj(i, j);
            for (size_t j = 0; j < brel.cols; ++j) both(i, proj.cols + j) = brel(i, j);
          }
          rall = rank_q(both);
          if (H[q].rank != rall - rb)
            throw closed_form_mismatch("closed form disagrees in degree " + std::to_string(q));
        } else {
          expect_eq(q, hr(q));
        }
      }
      break;
    }
  }
  return H;
}

duality_report duality_ranks_check(const chain_complex& W, const perversity& p) {
  auto abs = intersection_cone_complex(W, p, false);
  auto rel = intersection_cone_complex(W, p.complement(), true);
  auto Ha = homology(abs.C);
  auto Hr = homology(rel.C);
  duality_report rep;
  int n = abs.n;
  rep.abs_rank.assign(n + 1, 0);
  rep.rel_rank.assign(n + 1, 0);
  for (int q = 0; q <= n; ++q) {
    rep.abs_rank[q] = Ha[q].rank;
    rep.rel_rank[q] = Hr[q].rank;
  }
  for (int q = 0; q <= n; ++q)
    if (rep.abs_rank[q] != rep.rel_rank[n - q])
      throw duality_violation("rank duality fails at degree " + std::to_string(q));
  return rep;
}

}  // namespace ict
