#pragma once
#include "ict/snf.hpp"

namespace ict {

struct invalid_perversity : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct closed_form_mismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct duality_violation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Perversity for top dimension n: integers p_2..p_n with p_2 = 0 and unit
// steps; cutoff a = n - p_n.
struct perversity {
  int n = 2;
  std::vector<int> v;  // v[j-2] = p_j

  int at(int j) const { return v.at(j - 2); }
  int cutoff() const { return n - at(n); }
  void validate() const;

  static perversity zero(int n);
  static perversity top(int n);
  static perversity lower_middle(int n);
  static perversity custom(int n, std::vector<int> vals);
  perversity complement() const;  // p^c_j = j - p_j - 2
};

// True iff the closure of the cell meets the singular set in dimension
// <= dim(cell) - n + p_n (empty intersection always allowed).
bool allowable(const cw_complex& K, const std::string& cell_id, const perversity& p);

// Intersection chain complex of a cone (absolute or relative to the section)
// or of a pseudomanifold presented as a mapping cone.  Degrees below the
// cutoff use the base modules, degree a carries the cycle-lattice block, and
// higher degrees the cone modules.
struct intersection_chain_complex {
  enum kind_t { cone_abs, cone_rel, map_cone } kind = cone_abs;
  chain_complex C;   // the assembled complex
  int a = 0;         // cutoff
  int n = 0;         // top dimension
  chain_complex W;   // section complex
  chain_complex D;   // ambient complex (mapping cone only; = W otherwise)
  zmat Zb;           // kernel-lattice basis used for the degree-a block
  std::vector<zmat> inj;  // section -> ambient inclusion (mapping cone only)
};

// Zbasis, when given, must be a unimodular change of the SNF cycle basis in
// degree a-1; the torsion is invariant under any such change.
intersection_chain_complex intersection_cone_complex(const chain_complex& W, const perversity& p,
                                                     bool relative, const zmat* Zbasis = nullptr);
// i : section complex -> ambient complex (the regular part).
intersection_chain_complex intersection_mapping_cone(const chain_inclusion& i, const perversity& p);

// SNF homology of the assembled complex; asserts the applicable closed form
// (throws closed_form_mismatch on disagreement, which signals a bug).
std::vector<homology_group> intersection_homology(const intersection_chain_complex& X);

struct duality_report {
  std::vector<size_t> abs_rank, rel_rank;  // indexed by degree 0..n
};
// Asserts rank I^p H_q(cone) = rank I^{p^c} H_{n-q}(cone, W) for all q.
duality_report duality_ranks_check(const chain_complex& W, const perversity& p);

}  // namespace ict
