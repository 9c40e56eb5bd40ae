#pragma once
#include "ict/intersection.hpp"
#include "ict/torsion.hpp"

namespace ict {

// Metric/basis data for the section W used by the cone torsion formulas:
// homology lifts h_q (default: the standard representatives n_q), dual-
// harmonic Gram matrices G_q (default: identity), and the cone profile
// integrals log gamma_q = log int_0^l h(x)^{m-2q} dx (default: absent, i.e.
// purely combinatorial torsion).
struct cone_torsion_data {
  std::vector<qmat> h;
  std::vector<qmat> G;
  std::vector<double> log_gamma;
};

struct itorsion_result {
  torsion_value closed_form;  // product formula over the section data
  torsion_value direct;       // r_torsion of the assembled intersection complex
  bool agree = false;
};

// Torsion of the intersection chain complex of the cone over W.
// Absolute: prod_{q<=a-2} (det(h_q/n_q) #TH_q)^{(-1)^q} * (gamma_q det G_q factors);
// relative: prod_{q>=a-1} (det(h_q/n_q) #TH_q)^{(-1)^{q+1}} with Gram
// gamma_{m-q}^{-1} G_q attached at cone degree q+1.  Asserts agreement with
// the direct R-torsion of the assembled complex.
itorsion_result intersection_torsion_cone(const chain_complex& W, const perversity& p, bool relative,
                                          const cone_torsion_data& data = {});

struct pseudomanifold_torsion_result {
  torsion_value cone_factor, relative_factor, les_factor;  // the three factors
  torsion_value product, direct;
  bool agree = false;
};

// Torsion of a pseudomanifold presented as ambient complex with coned-off
// section: tau(K) = tau(cone) * tau(ambient, section) * tau(long exact
// sequence), cross-checked against the direct torsion of the mapping cone.
pseudomanifold_torsion_result intersection_torsion_pseudomanifold(const chain_inclusion& inc,
                                                                  const perversity& p);

struct torsion_duality_report {
  torsion_value abs, rel;  // I^p absolute and I^{p^c} relative torsion
  bool holds = false;      // log abs = (-1)^m log rel
};
torsion_duality_report torsion_duality_check(const chain_complex& W, const perversity& p,
                                             const cone_torsion_data& data = {});

}  // namespace ict
