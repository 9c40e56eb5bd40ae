#pragma once
#include "ict/itorsion.hpp"
#include "ict/section.hpp"
#include "ict/sl.hpp"

namespace ict {

struct divergent_integral : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct assembly_mismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct pole_collision : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Finite deformed cone over the section: metric dx^2 + h(x)^2 g on (0,l].
struct cone_geometry {
  section_spectrum S;
  double l = 1;
  profile prof;  // h(x) = x H(x)

  int p() const { return (S.m + 1) / 2; }  // section dim m = 2p-1 or 2p
  void validate() const;
};

// Middle perversity on the (m+1)-dimensional cone: the lower one keeps section
// degrees q <= p, the upper (complementary) one q <= p-1 in the even case; for
// odd sections the two coincide.
enum class middle { lower, upper };

// gamma_q = int_0^l h(x)^{m-2q} dx (flat: l^{m-2q+1}/(m-2q+1) exact)
double gamma_integral(const cone_geometry& G, int q);

double double_factorial(int n);  // n!!, n odd >= -1

// Regularized Sum_n m_cex,q,n log((mu_{q,n}+alpha)/(mu_{q,n}-alpha)) with
// mu = sqrt(lambda + alpha^2): odd-power expansion 2 Sum_k alpha^{2k+1}/(2k+1)
// zeta_mu(2k+1); zeta_mu continued either through the shifted lattice zeta or
// through the binomial series off the unshifted one.
enum class reg_method { shifted, binomial };
double regularized_log_sum(const section_spectrum& S, int q, double alpha,
                           reg_method method = reg_method::shifted, double tol = 1e-9,
                           double* bound = nullptr);

// Interval factors of the torsion zeta function of the cone.
double t2_prime(const cone_geometry& G);
double t3_prime(const cone_geometry& G, middle p);          // 0 for odd sections
double t0_t1_reg_prime(const cone_geometry& G, double* bound = nullptr);

struct torsion_breakdown {
  double t0_t1 = 0, t2 = 0, t3 = 0, chi_term = 0;  // assembled = sum of these
  double log_T_global = 0;                         // the assembled value
  double closed_form = 0;                          // independent closed form
  double a_comb = 0, a_analy = 0;                  // only set by the anomaly path
  long chi = 0;
  middle perv = middle::lower;
  double error = 0;  // propagated bound
};

// Global part of the analytic torsion of the cone with absolute boundary
// condition; asserts the assembly against the closed form.
torsion_breakdown cone_global_torsion(const cone_geometry& G, middle p);

// Frustum [l1,l2] x W with relative/absolute conditions: 0 for odd sections,
// (1/2) chi(W) log 2 for even ones; flat-profile component cross-check.
torsion_breakdown frustum_global_torsion(const cone_geometry& G, double l1, double l2,
                                         middle p = middle::lower);

// Anomaly terms of the comparison theorem (even sections; zero for odd ones).
// log_det_G[q] = log det of the dual-harmonic Gram in degree q of the section,
// torsion_order[q] = #TH_q(W;Z).
struct anomaly_terms {
  double a_comb = 0, a_analy = 0, bound = 0;
};
anomaly_terms anomalies(const section_spectrum& S, const std::vector<double>& log_det_G,
                        const std::vector<Z>& torsion_order, middle p, double tol = 1e-9);

struct cm_report {
  double log_T_global = 0, log_tau = 0, a_comb = 0, a_analy = 0;
  double residual = 0, bound = 0;
};
// residual = log T_global - log I^p tau_RS - A_comb - A_analy, with the
// combinatorial torsion built from the bundled cell model of the section and
// the metric Gram/profile data of G.
cm_report cheeger_muller_check(const cone_geometry& G, middle p, double tol = 1e-9);

// Dual-harmonic Gram log-determinants of the built-in sections.
std::vector<double> section_gram_logdets(const section_spectrum& S);

}  // namespace ict
