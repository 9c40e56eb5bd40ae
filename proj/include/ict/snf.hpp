#pragma once
#include "ict/cw.hpp"

namespace ict {

// U * M * V = D with U, V unimodular and D diagonal, nonnegative, each
// diagonal entry dividing the next.
struct smith_decomposition {
  zmat U, D, V;
  size_t rank = 0;
  std::vector<Z> factors() const {  // nonzero diagonal entries
    std::vector<Z> f;
    for (size_t i = 0; i < rank; ++i) f.push_back(D(i, i));
    return f;
  }
};
smith_decomposition smith_normal_form(const zmat& M);

struct homology_group {
  size_t rank = 0;
  std::vector<Z> torsion;  // non-unit invariant factors, divisibility ordered
  Z torsion_order() const {
    Z t = 1;
    for (auto& k : torsion) t *= k;
    return t;
  }
  bool operator==(const homology_group& o) const { return rank == o.rank && torsion == o.torsion; }
};
std::vector<homology_group> homology(const chain_complex& C);

// Per-degree standard basis e_q = [b_q | n_q | hit_q] (columns, in the cell
// basis): u_q lifted boundaries first, then free homology representatives,
// then the cycles hit by the incoming boundary, so that
//   bd_q(e_{q,j}) = k_{q-1,j} * e_{q-1, m_{q-1} - u_q + j},  1 <= j <= u_q.
struct standard_basis_data {
  std::vector<zmat> e;            // per degree, square unimodular
  std::vector<size_t> u;          // u[q] = rank bd_q (u[0] = 0)
  std::vector<std::vector<Z>> k;  // k[q][j] = k_{q,j+1}, the u[q+1] scalars landing in degree q
  std::vector<homology_group> h;  // homology read off the construction
  size_t nfree(int q) const { return h[q].rank; }  // columns u[q]..u[q]+nfree-1 of e[q] are n_q
  zmat cycles(int q) const;                        // kernel-lattice basis z_q (all but the first u[q] columns)
  zmat homology_reps(int q) const;                 // the n_q block
};
standard_basis_data standard_bases(const chain_complex& C);

}  // namespace ict
