#include "ict/cone_analytic.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace ict {

namespace {

constexpr double ln2 = std::numbers::ln2;

int parity_sign(int q) { return q % 2 ? -1 : 1; }

}  // namespace

void cone_geometry::validate() const {
  if (l <= 0) throw non_positive_parameter("cone length must be positive");
  S.validate();
  for (int i = 1; i <= 100; ++i) {
    double x = l * i / 100.0;
    if (prof.h(x) <= 0) throw validation_error("profile not positive on (0,l]");
  }
}

double gamma_integral(const cone_geometry& G, int q) {
  int e = G.S.m - 2 * q;
  if (e <= -1) throw divergent_integral("profile power not integrable at the tip");
  if (G.prof.flat()) return std::pow(G.l, e + 1) / (e + 1);
  auto f = [&](double x) { return std::pow(G.prof.h(x), e); };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, G.l, 12, 1e-12);
}

double double_factorial(int n) {
  if (n < -1 || n % 2 == 0) throw std::invalid_argument("odd n >= -1 required");
  double v = 1;
  for (int k = n; k >= 3; k -= 2) v *= k;
  return v;
}

namespace {

// zeta_mu(sigma) = Sum m_cex (lambda + alpha^2)^{-sigma/2} for the torus
double torus_mu_zeta(const section_spectrum& S, double alpha, double sigma, reg_method method) {
  if (method == reg_method::shifted) return torus_zeta(S.L1, S.L2, sigma / 2, alpha * alpha);
  double lam_min = 4 * std::numbers::pi * std::numbers::pi /
                   (std::max(S.L1, S.L2) * std::max(S.L1, S.L2));
  if (alpha * alpha >= lam_min)
    throw convergence_error("binomial continuation needs alpha^2 below the spectral gap");
  double acc = 0, coef = 1, a2 = alpha * alpha;
  for (int j = 0; j <= 80; ++j) {
    double term = coef * std::pow(a2, j) * torus_zeta(S.L1, S.L2, sigma / 2 + j);
    acc += term;
    if (j > 2 && std::abs(term) < 1e-14 * (std::abs(acc) + 1)) return acc;
    coef *= (-sigma / 2 - j) / (j + 1);
  }
  throw convergence_error("binomial series for the shifted zeta did not settle");
}

}  // namespace

double regularized_log_sum(const section_spectrum& S, int q, double alpha, reg_method method,
                           double tol, double* bound) {
  if (q < 0 || q >= S.m) throw std::out_of_range("no coexact ladder in this degree");
  if (bound) *bound = 0;
  if (alpha == 0) return 0;
  if (S.kind == section_spectrum::custom) {
    std::vector<double> terms;
    for (auto& e : S.cex[q]) {
      double mu = std::sqrt(e.lam + alpha * alpha);
      if (mu <= std::abs(alpha)) throw pole_collision("alpha reaches the bottom of the ladder");
      terms.push_back(double(e.mult) * std::log((mu + alpha) / (mu - alpha)));
    }
    return pairwise_sum(std::move(terms));
  }
  if (S.kind == section_spectrum::circle)
    throw pole_collision("odd section: the shifted zeta has a pole at argument 1");
  double lam_min = S.cex[q].front().lam;
  double ratio2 = alpha * alpha / (lam_min + alpha * alpha);
  double acc = 0;
  for (int k = 0; k <= 60; ++k) {
    acc += 2 * std::pow(alpha, 2 * k + 1) / (2 * k + 1) *
           torus_mu_zeta(S, alpha, 2 * k + 1, method);
    double tail = 2 * std::pow(std::abs(alpha), 2 * k + 3) / (2 * k + 3) *
                  torus_mu_zeta(S, alpha, 2 * k + 3, method) / (1 - ratio2);
    if (std::abs(tail) < tol) {
      if (bound) *bound = std::abs(tail);
      return acc;
    }
  }
  throw convergence_error("regularized log sum tail not below tolerance");
}

double t2_prime(const cone_geometry& G) {
  const auto& S = G.S;
  int p = G.p();
  double hl = G.prof.h(G.l), v = 0;
  for (int q = 0; q <= p - 1; ++q) {
    double lg = std::log(gamma_integral(G, q));
    if (S.m % 2)
      v += parity_sign(q) * 0.5 * S.har[q] * ((2 * S.alpha(q) - 1) * std::log(hl) + lg);
    else {
      double df = double_factorial(2 * p - 2 * q - 1);
      v += 0.5 * S.har[q] * (parity_sign(q + 1) * std::log(df * df / 4) + parity_sign(q) * lg);
    }
  }
  return v;
}

double t3_prime(const cone_geometry& G, middle p) {
  const auto& S = G.S;
  if (S.m % 2) return 0;
  int pp = S.m / 2;
  double z = p == middle::upper ? ln2 : std::log(2 * G.l);
  return parity_sign(pp) * 0.5 * S.har[pp] * z;
}

double t0_t1_reg_prime(const cone_geometry& G, double* bound) {
  const auto& S = G.S;
  int p = G.p();
  if (bound) *bound = 0;
  if (S.m % 2) {
    double v = 0, z0 = 0;
    for (int q = 0; q <= p - 2; ++q) {
      v += parity_sign(q + 1) * 0.5 * section_zeta_deriv0(S, q);
      z0 += parity_sign(q + 1) * section_zeta(S, q, 0);
    }
    v += parity_sign(p) * 0.25 * section_zeta_deriv0(S, p - 1);
    z0 += parity_sign(p) * 0.5 * section_zeta(S, p - 1, 0);
    return v + std::log(G.prof.h(G.l)) * z0;
  }
  if (!G.prof.flat())
    throw unsupported_section("even section: regular part available for h(x) = x only");
  double v = 0, btot = 0;
  for (int q = 0; q <= p - 1; ++q) {
    double b = 0;
    v += parity_sign(q) * 0.5 * regularized_log_sum(S, q, S.alpha(q), reg_method::shifted, 1e-9, &b);
    btot += 0.5 * b;
  }
  if (bound) *bound = btot;
  return v;
}

torsion_breakdown cone_global_torsion(const cone_geometry& G, middle p) {
  G.validate();
  const auto& S = G.S;
  int pp = G.p();
  torsion_breakdown B;
  B.perv = p;
  B.chi = S.chi;
  double b0 = 0;
  B.t0_t1 = t0_t1_reg_prime(G, &b0);
  B.t2 = t2_prime(G);
  B.t3 = t3_prime(G, p);
  B.chi_term = -0.25 * S.chi * ln2;
  B.log_T_global = B.t0_t1 + B.t2 + B.t3 + B.chi_term;
  B.error = b0 + 1e-11;

  if (S.m % 2) {
    double v = 0.5 * section_analytic_torsion(S);
    for (int q = 0; q <= pp - 1; ++q)
      v += parity_sign(q) * 0.5 * S.har[q] * std::log(gamma_integral(G, q));
    B.closed_form = v;
  } else {
    int P = p == middle::upper ? pp - 1 : pp;
    double v = 0.25 * S.chi * ln2;
    for (int q = 0; q <= P; ++q)
      v += parity_sign(q) * 0.5 * S.har[q] * std::log(gamma_integral(G, q));
    for (int q = 0; q <= pp - 1; ++q) {
      v += parity_sign(q + 1) * S.har[q] * std::log(double_factorial(2 * pp - 2 * q - 1));
      double b = 0;
      v += parity_sign(q) * 0.5 *
           regularized_log_sum(S, q, S.alpha(q), reg_method::shifted, 1e-9, &b);
      B.error += 0.5 * b;
    }
    B.closed_form = v;
  }
  if (std::abs(B.log_T_global - B.closed_form) > 1e-8 + 10 * B.error)
    throw assembly_mismatch("assembled global torsion disagrees with the closed form");
  return B;
}

torsion_breakdown frustum_global_torsion(const cone_geometry& G, double l1, double l2, middle p) {
  G.S.validate();
  if (!(0 < l1 && l1 < l2)) throw non_positive_parameter("need 0 < l1 < l2");
  const auto& S = G.S;
  int pp = G.p();
  torsion_breakdown B;
  B.perv = p;
  B.chi = S.chi;
  if (S.m % 2) {
    B.closed_form = B.log_T_global = 0;
    if (S.kind != section_spectrum::custom) {
      double ratio = std::log(G.prof.h(l2) / G.prof.h(l1));
      double z0 = 0;
      for (int q = 0; q <= pp - 2; ++q) z0 += parity_sign(q) * section_zeta(S, q, 0);
      z0 += parity_sign(pp - 1) * 0.5 * section_zeta(S, pp - 1, 0);
      B.t0_t1 = -ratio * z0;
      for (int q = 0; q <= pp - 1; ++q)
        B.t2 += parity_sign(q + 1) * 0.5 * S.har[q] * (1 - 2 * S.alpha(q)) * ratio;
      if (std::abs(B.t0_t1 + B.t2) > 1e-10)
        throw assembly_mismatch("odd frustum components do not cancel");
    }
  } else {
    B.closed_form = B.log_T_global = 0.5 * S.chi * ln2;
    for (int q = 0; q <= pp - 1; ++q) B.t2 += parity_sign(q) * S.har[q] * ln2;
    B.t3 = parity_sign(pp) * 0.5 * S.har[pp] * ln2;
    if (std::abs(B.t2 + B.t3 - B.closed_form) > 1e-12)
      throw assembly_mismatch("even frustum components do not sum to the closed form");
  }
  return B;
}

anomaly_terms anomalies(const section_spectrum& S, const std::vector<double>& log_det_G,
                        const std::vector<Z>& torsion_order, middle p, double tol) {
  anomaly_terms A;
  if (S.m % 2) return A;
  int pp = S.m / 2;
  int P = p == middle::upper ? pp - 1 : pp;
  if (int(log_det_G.size()) <= P || int(torsion_order.size()) <= P)
    throw std::invalid_argument("gram/torsion data too short for the perversity range");
  for (int q = 0; q <= P; ++q)
    A.a_comb -= parity_sign(q) * (std::log(torsion_order[q].get_d()) + 0.5 * log_det_G[q]);
  A.a_analy = 0.25 * S.chi * ln2;
  for (int q = 0; q <= pp - 1; ++q) {
    A.a_analy += parity_sign(q + 1) * S.har[q] * std::log(double_factorial(2 * pp - 2 * q - 1));
    double b = 0;
    A.a_analy += parity_sign(q) * 0.5 *
                 regularized_log_sum(S, q, S.alpha(q), reg_method::shifted, tol, &b);
    A.bound += 0.5 * b;
  }
  return A;
}

std::vector<double> section_gram_logdets(const section_spectrum& S) {
  switch (S.kind) {
    case section_spectrum::circle: {
      double v = std::log(2 * std::numbers::pi * S.r);
      return {v, -v};
    }
    case section_spectrum::torus: {
      double v = std::log(S.L1 * S.L2);
      return {v, 0.0, -v};
    }
    default:
      throw unsupported_section("no bundled metric cell model for user ladders");
  }
}

cm_report cheeger_muller_check(const cone_geometry& G, middle p, double tol) {
  G.validate();
  const auto& S = G.S;
  if (S.kind == section_spectrum::custom)
    throw unsupported_section("no bundled cell model for user ladders");
  cw_complex W = (S.kind == section_spectrum::circle ? circle_simplicial() : torus2_simplicial())
                     .to_cw();
  chain_complex C = make_chain_complex(W);
  perversity pv = perversity::lower_middle(S.m + 1);
  if (p == middle::upper) pv = pv.complement();

  cone_torsion_data data;
  data.log_gamma.assign(S.m + 1, 0.0);
  for (int q = 0; q <= S.m; ++q)
    if (S.m - 2 * q > -1) data.log_gamma[q] = std::log(gamma_integral(G, q));
  auto it = intersection_torsion_cone(C, pv, false, data);

  std::vector<double> lg = section_gram_logdets(S);
  double gram = 0;
  for (int q = 0; q <= pv.cutoff() - 2; ++q) gram += parity_sign(q) * 0.5 * lg[q];

  std::vector<Z> tord;
  for (auto& h : homology(C)) tord.push_back(h.torsion_order());

  auto an = anomalies(S, lg, tord, p, tol);
  auto gb = cone_global_torsion(G, p);

  cm_report R;
  R.log_T_global = gb.log_T_global;
  R.log_tau = it.direct.log_value() + gram;
  R.a_comb = an.a_comb;
  R.a_analy = an.a_analy;
  R.residual = R.log_T_global - R.log_tau - R.a_comb - R.a_analy;
  R.bound = gb.error + an.bound;
  return R;
}

}  // namespace ict
