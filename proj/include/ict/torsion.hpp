#pragma once
#include "ict/snf.hpp"

namespace ict {

struct rank_mismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct singular_basis : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Chain complex over Q with a distinguished chain basis (the coordinates),
// homology basis lifts h[q] (columns are independent cycles), and optional
// Gram matrices G[q] declaring the inner product in which h[q] is a basis of
// harmonic representatives.
struct based_chain_complex {
  int top = 0;
  std::vector<size_t> n;  // module dimensions per degree
  std::vector<qmat> d;    // d[0] unused
  std::vector<qmat> h;    // may be empty in a degree (rank-0 homology)
  std::vector<qmat> G;    // empty matrix = identity

  size_t dim(int q) const { return (q < 0 || q > top) ? 0 : n[q]; }
  const qmat& bd(int q) const { return d[q]; }
};

// Build a based complex from an integer chain complex; homology lifts default
// to the standard basis representatives n_q.
based_chain_complex based(const chain_complex& C);
based_chain_complex based(const chain_complex& C, const std::vector<qmat>& h);

// log tau = log(rat) + logres; rat collects the exact rational determinant
// factors, logres the (floating) Gram half-log-determinants.
struct torsion_value {
  Q rat = 1;
  double logres = 0;
  double log_value() const;
  torsion_value& mul(const torsion_value& o, int sign = 1);
  bool operator==(const torsion_value& o) const { return rat == o.rat && logres == o.logres; }
};

// R-torsion: prod_q |det(bd(b_{q+1}) hhat_q b_q / c_q)|^{(-1)^q}, with b_q the
// unit chains at the pivot columns of bd_q (overridable), times
// prod_q (det G_q)^{(-1)^q/2}.
torsion_value r_torsion(const based_chain_complex& B,
                        const std::vector<std::vector<size_t>>* pivots = nullptr);

// Short exact sequence of based complexes 0 -> sub -> total -> quot -> 0 with
// degreewise split injections/projections in the given chain bases.
struct exact_triple {
  based_chain_complex sub, total, quot;
  std::vector<qmat> inj;   // total.dim(q) x sub.dim(q)
  std::vector<qmat> proj;  // quot.dim(q) x total.dim(q)
};

// The acyclic long exact homology sequence as a based complex, based by the
// three homology bases; degree 3q = H_q(quot), 3q+1 = H_q(total), 3q+2 = H_q(sub).
based_chain_complex les_complex(const exact_triple& T);

struct milnor_report {
  torsion_value sub, total, quot, les;
  bool holds = false;  // total == sub * quot * les
};
milnor_report milnor_additivity_check(const exact_triple& T);

}  // namespace ict
