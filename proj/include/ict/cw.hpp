#pragma once
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ict/mat.hpp"

namespace ict {

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct cw_cell {
  std::string id;
  int dim = 0;
  std::vector<std::pair<std::string, long>> bd;  // (face id, incidence)
};

// Regular CW complex: cells with signed boundary incidences, canonically
// ordered by (dim, id); validated so that the boundary matrices square to 0.
struct cw_complex {
  int n = 0;
  std::vector<cw_cell> cells;
  std::set<std::string> singular;
  std::map<std::string, std::vector<std::string>> subcomplexes;

  std::map<std::string, size_t> index;  // id -> position in `cells`

  void canonicalize();
  void validate() const;
  size_t count(int dim) const;
};

// Graded integer chain complex: d[q] maps degree q to q-1, q = 1..top.
struct chain_complex {
  int top = 0;
  std::vector<zmat> d;                           // d[0] unused (empty)
  std::vector<std::vector<std::string>> labels;  // per-degree basis labels

  size_t dim(int q) const { return (q < 0 || q > top) ? 0 : labels[q].size(); }
  const zmat& bd(int q) const { return d[q]; }
  void check() const;  // shapes and d*d == 0
  long euler() const;
};

struct chain_inclusion {
  chain_complex source, target;
  std::vector<zmat> inj;  // per degree, target.dim x source.dim, signed unit columns
  void check() const;
};

cw_complex load_complex(const std::string& path);
cw_complex parse_complex(const std::string& text);
std::string serialize_complex(const cw_complex& K);

chain_complex make_chain_complex(const cw_complex& K);

// Geometric cone: one apex vertex (marked singular) plus one cell [v,e] per
// cell e of K; records subcomplex "base". Also returns the base inclusion.
std::pair<cw_complex, chain_inclusion> cone(const cw_complex& K);

// Algebraic mapping cone of an inclusion, degree q module C_{q-1} (+) D_q,
// boundary blocks [[dC, 0], [i, -dD]].
chain_complex mapping_cone(const chain_inclusion& i);

chain_complex relative_chain(const cw_complex& K, const std::set<std::string>& L);

chain_inclusion subcomplex_inclusion(const cw_complex& K, const std::set<std::string>& L);

// Simplicial complexes (vertices are ints); used for the bundled spaces and
// for barycentric subdivision.
struct simplicial_complex {
  int n = 0;
  std::vector<std::vector<std::vector<int>>> simp;  // [dim][i] = sorted vertex list

  static simplicial_complex from_facets(const std::vector<std::vector<int>>& facets);
  cw_complex to_cw() const;
  static std::string cell_id(const std::vector<int>& s);
};

// Barycentric subdivision together with the subdivision chain map
// Sd_q : C_q(K) -> C_q(Sd K).
struct subdivision {
  cw_complex sd;
  std::vector<zmat> sd_map;  // per degree
};
subdivision barycentric(const simplicial_complex& K);

// Bundled complexes.
simplicial_complex circle_simplicial();       // 3 vertices
simplicial_complex disk_simplicial();         // one 2-simplex
simplicial_complex annulus_simplicial();      // 6 vertices, 6 triangles
simplicial_complex sphere2_simplicial();      // tetrahedron boundary
simplicial_complex torus2_simplicial();       // 9-vertex triangulation
simplicial_complex rp2_simplicial();          // 6-vertex triangulation
std::vector<std::string> annulus_inner_circle();  // cell ids of one boundary circle

}  // namespace ict
