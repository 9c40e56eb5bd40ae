#include "ict/cw.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

namespace ict {

void cw_complex::canonicalize() {
  std::sort(cells.begin(), cells.end(), [](const cw_cell& a, const cw_cell& b) {
    return a.dim != b.dim ? a.dim < b.dim : a.id < b.id;
  });
  index.clear();
  for (size_t i = 0; i < cells.size(); ++i) {
    if (!index.emplace(cells[i].id, i).second)
      throw validation_error("duplicate cell id: " + cells[i].id);
  }
}

size_t cw_complex::count(int dim) const {
  size_t c = 0;
  for (auto& e : cells) c += (e.dim == dim);
  return c;
}

void cw_complex::validate() const {
  for (auto& c : cells) {
    if (c.dim < 0 || c.dim > n) throw validation_error("cell dimension out of range: " + c.id);
    for (auto& [fid, co] : c.bd) {
      auto it = index.find(fid);
      if (it == index.end()) throw validation_error("dangling reference to " + fid + " in cell " + c.id);
      if (cells[it->second].dim != c.dim - 1)
        throw validation_error("face " + fid + " of " + c.id + " has wrong dimension");
      (void)co;
    }
  }
  for (auto& s : singular) {
    auto it = index.find(s);
    if (it == index.end() || cells[it->second].dim != 0)
      throw validation_error("singular mark on non-vertex: " + s);
  }
  for (auto& [name, ids] : subcomplexes)
    for (auto& id : ids)
      if (!index.count(id)) throw validation_error("subcomplex " + name + " references missing cell " + id);
  chain_complex C = make_chain_complex(*this);
  C.check();
}

void chain_complex::check() const {
  for (int q = 1; q <= top; ++q) {
    if (d[q].rows != dim(q - 1) || d[q].cols != dim(q))
      throw validation_error("boundary matrix shape mismatch in degree " + std::to_string(q));
  }
  for (int q = 1; q < top; ++q) {
    if (!(d[q] * d[q + 1]).is_zero())
      throw validation_error("boundary squared nonzero between degrees " + std::to_string(q + 1) + " and " +
                             std::to_string(q - 1));
  }
}

long chain_complex::euler() const {
  long e = 0;
  for (int q = 0; q <= top; ++q) e += (q % 2 ? -1L : 1L) * long(dim(q));
  return e;
}

void chain_inclusion::check() const {
  for (int q = 0; q <= source.top; ++q) {
    const zmat& i = inj[q];
    for (size_t c = 0; c < i.cols; ++c) {
      int nz = 0;
      for (size_t r = 0; r < i.rows; ++r)
        if (i(r, c) != 0) {
          ++nz;
          if (i(r, c) != 1 && i(r, c) != -1) throw validation_error("inclusion column not a signed unit vector");
        }
      if (nz != 1) throw validation_error("inclusion column not a signed unit vector");
    }
    if (q >= 1) {
      zmat lhs = inj[q - 1] * source.bd(q);
      zmat rhs = target.bd(q) * inj[q];
      if (!(lhs == rhs)) throw validation_error("inclusion does not commute with boundaries");
    }
  }
}

cw_complex parse_complex(const std::string& text) {
  cw_complex K;
  bool saw_dim = false;
  std::istringstream in(text);
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw) || kw[0] == '#') continue;
    auto fail = [&](const std::string& m) { throw parse_error("line " + std::to_string(lineno) + ": " + m); };
    if (kw == "dim") {
      if (!(ls >> K.n) || K.n < 0) fail("bad dimension");
      saw_dim = true;
    } else if (kw == "cell") {
      cw_cell c;
      if (!(ls >> c.id >> c.dim)) fail("bad cell record");
      std::string blist;
      if (ls >> blist) {
        if (blist.size() < 2 || blist.front() != '[' || blist.back() != ']') fail("bad boundary list for " + c.id);
        std::string body = blist.substr(1, blist.size() - 2);
        std::stringstream bs(body);
        std::string item;
        while (std::getline(bs, item, ',')) {
          auto p = item.rfind(':');
          if (p == std::string::npos || p == 0) fail("bad boundary entry '" + item + "'");
          long co = 0;
          try {
            co = std::stol(item.substr(p + 1));
          } catch (...) {
            fail("bad incidence coefficient in '" + item + "'");
          }
          c.bd.emplace_back(item.substr(0, p), co);
        }
      }
      K.cells.push_back(std::move(c));
    } else if (kw == "singular") {
      std::string id;
      while (ls >> id) K.singular.insert(id);
    } else if (kw == "subcomplex") {
      std::string name, id;
      if (!(ls >> name)) fail("subcomplex without name");
      auto& v = K.subcomplexes[name];
      while (ls >> id) v.push_back(id);
    } else {
      fail("unknown keyword '" + kw + "'");
    }
  }
  if (!saw_dim) throw parse_error("missing 'dim' header");
  K.canonicalize();
  K.validate();
  return K;
}

cw_complex load_complex(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw parse_error("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_complex(ss.str());
}

std::string serialize_complex(const cw_complex& K) {
  std::ostringstream os;
  os << "dim " << K.n << "\n";
  for (auto& c : K.cells) {
    os << "cell " << c.id << " " << c.dim;
    if (!c.bd.empty()) {
      os << " [";
      for (size_t i = 0; i < c.bd.size(); ++i)
        os << (i ? "," : "") << c.bd[i].first << ":" << c.bd[i].second;
      os << "]";
    }
    os << "\n";
  }
  if (!K.singular.empty()) {
    os << "singular";
    for (auto& s : K.singular) os << " " << s;
    os << "\n";
  }
  for (auto& [name, ids] : K.subcomplexes) {
    os << "subcomplex " << name;
    for (auto& id : ids) os << " " << id;
    os << "\n";
  }
  return os.str();
}

chain_complex make_chain_complex(const cw_complex& K) {
  chain_complex C;
  C.top = 0;
  for (auto& c : K.cells) C.top = std::max(C.top, c.dim);
  C.labels.assign(C.top + 1, {});
  std::map<std::string, size_t> pos;  // id -> index within its degree
  for (auto& c : K.cells) {
    pos[c.id] = C.labels[c.dim].size();
    C.labels[c.dim].push_back(c.id);
  }
  C.d.assign(C.top + 1, {});
  for (int q = 1; q <= C.top; ++q) C.d[q] = zmat(C.dim(q - 1), C.dim(q));
  for (auto& c : K.cells)
    for (auto& [fid, co] : c.bd) C.d[c.dim](pos.at(fid), pos.at(c.id)) += co;
  return C;
}

std::pair<cw_complex, chain_inclusion> cone(const cw_complex& K) {
  if (K.cells.empty()) throw validation_error("cone of the empty complex");
  cw_complex C;
  C.n = K.n + 1;
  for (auto& c : K.cells) C.cells.push_back(c);
  cw_cell apex{"@", 0, {}};
  C.cells.push_back(apex);
  C.singular.insert("@");
  std::vector<std::string> base_ids;
  for (auto& c : K.cells) {
    base_ids.push_back(c.id);
    cw_cell cc;
    cc.id = "@" + c.id;
    cc.dim = c.dim + 1;
    if (c.dim == 0) {
      cc.bd = {{c.id, 1}, {"@", -1}};
    } else {
      cc.bd.emplace_back(c.id, 1);
      for (auto& [fid, co] : c.bd) cc.bd.emplace_back("@" + fid, -co);
    }
    C.cells.push_back(std::move(cc));
  }
  C.subcomplexes["base"] = base_ids;
  C.canonicalize();
  C.validate();
  chain_inclusion inc = subcomplex_inclusion(C, std::set<std::string>(base_ids.begin(), base_ids.end()));
  return {C, inc};
}

chain_complex mapping_cone(const chain_inclusion& i) {
  const chain_complex& C = i.source;
  const chain_complex& D = i.target;
  chain_complex M;
  M.top = std::max(C.top + 1, D.top);
  M.labels.assign(M.top + 1, {});
  for (int q = 0; q <= M.top; ++q) {
    for (size_t j = 0; j < C.dim(q - 1); ++j) M.labels[q].push_back("c:" + C.labels[q - 1][j]);
    if (q <= D.top)
      for (size_t j = 0; j < D.dim(q); ++j) M.labels[q].push_back("d:" + D.labels[q][j]);
  }
  M.d.assign(M.top + 1, {});
  for (int q = 1; q <= M.top; ++q) {
    size_t rc = C.dim(q - 2), rd = M.dim(q - 1) - rc;
    size_t cc = C.dim(q - 1), cd = M.dim(q) - cc;
    zmat m(rc + rd, cc + cd);
    if (q - 1 >= 1 && cc)
      for (size_t r = 0; r < rc; ++r)
        for (size_t c = 0; c < cc; ++c) m(r, c) = C.bd(q - 1)(r, c);
    if (cc)
      for (size_t r = 0; r < rd; ++r)
        for (size_t c = 0; c < cc; ++c) m(rc + r, c) = i.inj[q - 1](r, c);
    if (q <= D.top && cd)
      for (size_t r = 0; r < rd; ++r)
        for (size_t c = 0; c < cd; ++c) m(rc + r, cc + c) = -D.bd(q)(r, c);
    M.d[q] = std::move(m);
  }
  M.check();
  return M;
}

chain_complex relative_chain(const cw_complex& K, const std::set<std::string>& L) {
  for (auto& id : L) {
    auto it = K.index.find(id);
    if (it == K.index.end()) throw validation_error("subcomplex cell missing: " + id);
    for (auto& [fid, co] : K.cells[it->second].bd)
      if (!L.count(fid)) throw validation_error("subcomplex not closed under faces at " + id);
  }
  cw_complex R;
  R.n = K.n;
  for (auto& c : K.cells) {
    if (L.count(c.id)) continue;
    cw_cell rc = c;
    rc.bd.clear();
    for (auto& [fid, co] : c.bd)
      if (!L.count(fid)) rc.bd.emplace_back(fid, co);
    R.cells.push_back(std::move(rc));
  }
  R.canonicalize();
  return make_chain_complex(R);
}

chain_inclusion subcomplex_inclusion(const cw_complex& K, const std::set<std::string>& L) {
  cw_complex S;
  S.n = K.n;
  for (auto& c : K.cells)
    if (L.count(c.id)) S.cells.push_back(c);
  S.canonicalize();
  S.validate();
  chain_inclusion inc;
  inc.source = make_chain_complex(S);
  inc.target = make_chain_complex(K);
  inc.inj.assign(inc.source.top + 1, {});
  for (int q = 0; q <= inc.source.top; ++q) {
    zmat m(inc.target.dim(q), inc.source.dim(q));
    for (size_t j = 0; j < inc.source.dim(q); ++j) {
      const std::string& id = inc.source.labels[q][j];
      auto& tl = inc.target.labels[q];
      size_t r = std::find(tl.begin(), tl.end(), id) - tl.begin();
      m(r, j) = 1;
    }
    inc.inj[q] = std::move(m);
  }
  inc.check();
  return inc;
}

std::string simplicial_complex::cell_id(const std::vector<int>& s) {
  std::string id;
  for (size_t i = 0; i < s.size(); ++i) id += (i ? "." : "") + std::to_string(s[i]);
  return id;
}

simplicial_complex simplicial_complex::from_facets(const std::vector<std::vector<int>>& facets) {
  std::set<std::vector<int>> all;
  for (auto f : facets) {
    std::sort(f.begin(), f.end());
    size_t m = f.size();
    for (size_t mask = 1; mask < (1u << m); ++mask) {
      std::vector<int> s;
      for (size_t i = 0; i < m; ++i)
        if (mask & (1u << i)) s.push_back(f[i]);
      all.insert(s);
    }
  }
  simplicial_complex K;
  for (auto& s : all) {
    int d = int(s.size()) - 1;
    if (int(K.simp.size()) <= d) K.simp.resize(d + 1);
    K.simp[d].push_back(s);
    K.n = std::max(K.n, d);
  }
  return K;
}

cw_complex simplicial_complex::to_cw() const {
  cw_complex K;
  K.n = n;
  for (int d = 0; d <= n; ++d)
    for (auto& s : simp[d]) {
      cw_cell c;
      c.id = cell_id(s);
      c.dim = d;
      for (size_t i = 0; i < s.size() && d > 0; ++i) {
        std::vector<int> f = s;
        f.erase(f.begin() + i);
        c.bd.emplace_back(cell_id(f), (i % 2 ? -1 : 1));
      }
      K.cells.push_back(std::move(c));
    }
  K.canonicalize();
  K.validate();
  return K;
}

namespace {
using flag = std::vector<std::vector<int>>;  // simplices, decreasing dimension
std::string flag_id(const flag& F) {
  std::string id;
  for (size_t i = 0; i < F.size(); ++i) id += (i ? "|" : "") + std::string("b") + simplicial_complex::cell_id(F[i]);
  return id;
}
bool is_face(const std::vector<int>& f, const std::vector<int>& s) {
  return std::includes(s.begin(), s.end(), f.begin(), f.end());
}
}  // namespace

subdivision barycentric(const simplicial_complex& K) {
  // Flags in the face poset, ordered by decreasing dimension, form the cells
  // of the subdivision; dropping the i-th entry is the i-th boundary face.
  std::vector<std::vector<int>> all;
  for (auto& level : K.simp)
    for (auto& s : level) all.push_back(s);

  std::vector<flag> flags;
  std::vector<flag> frontier;
  for (auto& s : all) frontier.push_back({s});
  while (!frontier.empty()) {
    std::vector<flag> next;
    for (auto& F : frontier) {
      flags.push_back(F);
      const auto& last = F.back();
      if (last.size() == 1) continue;
      for (auto& s : all)
        if (s.size() < last.size() && is_face(s, last)) {
          flag G = F;
          G.push_back(s);
          next.push_back(std::move(G));
        }
    }
    frontier = std::move(next);
  }

  subdivision out;
  out.sd.n = K.n;
  for (auto& F : flags) {
    cw_cell c;
    c.id = flag_id(F);
    c.dim = int(F.size()) - 1;
    for (size_t i = 0; i < F.size() && F.size() > 1; ++i) {
      flag G = F;
      G.erase(G.begin() + i);
      c.bd.emplace_back(flag_id(G), (i % 2 ? -1 : 1));
    }
    out.sd.cells.push_back(std::move(c));
  }
  out.sd.canonicalize();
  out.sd.validate();

  chain_complex CK = make_chain_complex(K.to_cw());
  chain_complex CS = make_chain_complex(out.sd);

  // Sd(sigma) = b(sigma) * Sd(boundary sigma), cone prepending b(sigma).
  std::map<std::string, std::map<std::string, Z>> sd_chain;
  std::function<const std::map<std::string, Z>&(const std::vector<int>&)> sd_of =
      [&](const std::vector<int>& s) -> const std::map<std::string, Z>& {
    std::string key = simplicial_complex::cell_id(s);
    auto it = sd_chain.find(key);
    if (it != sd_chain.end()) return it->second;
    std::map<std::string, Z> ch;
    if (s.size() == 1) {
      ch[flag_id({s})] = 1;
    } else {
      for (size_t i = 0; i < s.size(); ++i) {
        std::vector<int> f = s;
        f.erase(f.begin() + i);
        Z sign = (i % 2 ? -1 : 1);
        for (auto& [fid, co] : sd_of(f)) {
          // prepend b(s) to the flag fid
          std::string nid = "b" + key + "|" + fid;
          ch[nid] += sign * co;
        }
      }
    }
    return sd_chain.emplace(key, std::move(ch)).first->second;
  };

  out.sd_map.assign(CK.top + 1, {});
  for (int q = 0; q <= CK.top; ++q) {
    zmat m(CS.dim(q), CK.dim(q));
    auto& sl = CS.labels[q];
    for (size_t j = 0; j < CK.dim(q); ++j) {
      std::vector<int> s;
      {
        std::stringstream ss(CK.labels[q][j]);
        std::string t;
        while (std::getline(ss, t, '.')) s.push_back(std::stoi(t));
      }
      for (auto& [fid, co] : sd_of(s)) {
        size_t r = std::find(sl.begin(), sl.end(), fid) - sl.begin();
        m(r, j) = co;
      }
    }
    out.sd_map[q] = std::move(m);
  }
  // chain map check: d * Sd == Sd * d
  for (int q = 1; q <= CK.top; ++q) {
    zmat lhs = CS.bd(q) * out.sd_map[q];
    zmat rhs = out.sd_map[q - 1] * CK.bd(q);
    if (!(lhs == rhs)) throw validation_error("subdivision chain map failure in degree " + std::to_string(q));
  }
  return out;
}

simplicial_complex circle_simplicial() { return simplicial_complex::from_facets({{0, 1}, {1, 2}, {0, 2}}); }
simplicial_complex disk_simplicial() { return simplicial_complex::from_facets({{0, 1, 2}}); }

simplicial_complex annulus_simplicial() {
  std::vector<std::vector<int>> f;
  for (int i = 0; i < 3; ++i) {
    int j = (i + 1) % 3;
    f.push_back({i, j, 3 + i});
    f.push_back({j, 3 + i, 3 + j});
  }
  return simplicial_complex::from_facets(f);
}

std::vector<std::string> annulus_inner_circle() {
  return {"0", "1", "2", "0.1", "1.2", "0.2"};
}

simplicial_complex sphere2_simplicial() {
  return simplicial_complex::from_facets({{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}

simplicial_complex torus2_simplicial() {
  auto v = [](int i, int j) { return 3 * ((i % 3 + 3) % 3) + ((j % 3 + 3) % 3); };
  std::vector<std::vector<int>> f;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      f.push_back({v(i, j), v(i + 1, j), v(i + 1, j + 1)});
      f.push_back({v(i, j), v(i + 1, j + 1), v(i, j + 1)});
    }
  return simplicial_complex::from_facets(f);
}

simplicial_complex rp2_simplicial() {
  return simplicial_complex::from_facets({{1, 2, 3},
                                          {1, 3, 4},
                                          {1, 4, 5},
                                          {1, 5, 6},
                                          {1, 2, 6},
                                          {2, 3, 5},
                                          {3, 4, 6},
                                          {2, 4, 5},
                                          {3, 5, 6},
                                          {2, 4, 6}});
}

}  // namespace ict
