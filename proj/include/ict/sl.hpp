#pragma once
#include <stdexcept>
#include <vector>

namespace ict {

struct series_divergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct bracket_failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct unknown_asymptotics : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// cone profile h(x) = x (1 + c[0] x + c[1] x^2 + ...)
struct profile {
  std::vector<double> c;
  double h(double x) const;
  double hp(double x) const;
  double hpp(double x) const;
  bool flat() const { return c.empty(); }
};

// -u'' + q u = lambda u on (0,l] with
// q = -(alpha-1/2) h''/h + (alpha^2-1/4) h'^2/h^2 + (nu^2-alpha^2)/h^2,
// indicial exponents 1/2 +- nu at 0.
struct sl_problem {
  double nu = 0.5, alpha = 0.5, l = 1;
  profile prof;
  enum bc_t { rel, abs } bc = rel;     // at x = l: u(l) = 0  /  (h^{a-1/2}u)'(l) = 0
  enum ext_t { plus, minus } ext = plus;  // extension at 0 (minus requires nu < 1)
};

struct sl_eval {
  double u = 0, du = 0;
};

// Normalized solution u_+ (x^{1/2+nu}(1+...)) or u_- (x^{1/2-nu}(1+...),
// log-modified at integer 2nu when the resonance does not cancel) at fixed
// lambda: Frobenius series up to the handoff radius, adaptive Runge-Kutta
// beyond it.
class fundamental_solution {
 public:
  fundamental_solution(const sl_problem& P, double lambda, bool plus);
  sl_eval at(double x) const;
  std::vector<sl_eval> at(std::vector<double> xs) const;  // strictly increasing

 private:
  sl_problem P_;
  double lam_, sigma_, rho_, logb_ = 0;
  std::vector<double> a_, cplus_;  // series coefficients (cplus: companion u_+ for log case)
  bool logterm_ = false;
  sl_eval series_at(double x) const;
  double qval(double x) const;
  friend struct sl_detail;
};

// characteristic function whose zeros are the eigenvalues:
// rel: u(l); abs: (h^{alpha-1/2} u)'(l)
double characteristic_B(const sl_problem& P, double lambda);

// first K positive zeros by sign-change scan in sqrt(lambda) + bisection
std::vector<double> eigenvalues(const sl_problem& P, size_t K);

// -zeta'(0) = log B(l,0) (kernel-adjusted) minus the closed large-lambda
// constant log(2^{+-nu-1/2} Gamma(1 +- nu)/sqrt(pi)) (+ (alpha-1/2) log h(l)
// for the absolute condition).
double zeta_determinant(const sl_problem& P);

// -zeta'(0) for an explicit positive ladder with known closed form:
// (pi k/l)^2 -> log 2l; ((2k-1) pi/2l)^2 -> log 2 (cross-check oracles)
double ladder_zeta_determinant(const std::vector<double>& ladder, double l);

struct frustum_problem {
  double nu = 0.5, alpha = 0.5, a = 1, b = 2;
  profile prof;  // must be positive on [a,b]
  sl_problem::bc_t bc_a = sl_problem::rel, bc_b = sl_problem::abs;
};
// 2x2 determinant of the boundary forms on a basis of solutions with initial
// conditions at a; zeros are the eigenvalues.
double frustum_characteristic(const frustum_problem& P, double lambda);
std::vector<double> frustum_eigenvalues(const frustum_problem& P, size_t K);

// max_k |lambda_k - lambda0_k| over the first K eigenvalues of P vs its flat
// version; *slope receives the least-squares growth rate per index.
double perturbation_bound(const sl_problem& P, size_t K, double* slope = nullptr);

double bessel_zero(double nu, int k);  // j_{nu,k}

}  // namespace ict
