#pragma once
#include <stdexcept>
#include <string>
#include <vector>

namespace ict {

struct non_positive_parameter : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct pole_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct convergence_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct unsupported_section : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct spectrum_line {
  double lam = 0;  // coexact eigenvalue
  long mult = 0;
};

// Spectral data of a closed section: coexact eigenvalue ladders per degree,
// harmonic (Betti) ranks, metric parameters.  Built-ins: round circle and
// flat rectangular torus.  cutoff > 0 records ladder truncation (lam <= cutoff).
struct section_spectrum {
  enum kind_t { circle, torus, custom } kind = custom;
  int m = 1;
  std::vector<std::vector<spectrum_line>> cex;  // degrees 0..m-1
  std::vector<long> har;                        // degrees 0..m
  double r = 0, L1 = 0, L2 = 0;
  long chi = 0;
  double cutoff = 0;

  double alpha(int q) const { return q + 0.5 * (1 - m); }
  void validate() const;  // ladders increasing/positive, Hodge pairing q <-> m-1-q
};

section_spectrum circle_spectrum(double r, double cutoff = 1e4);
section_spectrum flat_torus_spectrum(double L1, double L2, double cutoff = 1e4);

// sum'_{(j,k) != 0} (4 pi^2 (j^2/L1^2 + k^2/L2^2) + shift)^{-s}, analytically
// continued via the theta-function split at t = 1 (exponentially convergent
// incomplete-gamma sums).  s = 1 is the only pole; s = 0 returns -1.
double torus_zeta(double L1, double L2, double s, double shift = 0);
double torus_zeta_deriv0(double L1, double L2);  // d/ds at s = 0, shift 0

// Brute-force partial sum over the lattice disc of radius R (oracle for the
// continuation at Re s > 1).  Deterministic pairwise reduction; the term
// vector is filled in parallel when OpenMP is enabled.
double torus_zeta_direct(double L1, double L2, double s, double shift, long R);
double torus_zeta_direct_serial(double L1, double L2, double s, double shift, long R);

// zeta of the coexact degree-q ladder: sum m_cex lam^{-s}.  Exact Riemann
// values for the circle, theta-split continuation for the torus.
double section_zeta(const section_spectrum& S, int q, double s);
double section_zeta_deriv0(const section_spectrum& S, int q);

double section_analytic_torsion(const section_spectrum& S);  // log T(W)

// Deterministic pairwise summation (order-independent of thread count).
double pairwise_sum(std::vector<double> v);

}  // namespace ict
