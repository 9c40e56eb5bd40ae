#include "ict/section.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace ict {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double euler = std::numbers::egamma;

// upper incomplete gamma for any real a (integer a <= 0 via E_n, other
// negative a by downward recurrence from the fractional part).
double upper_gamma(double a, double x) {
  if (a > 0) return boost::math::tgamma(a, x);
  double r = std::round(a);
  if (std::abs(a - r) < 1e-12 && r <= 0) {
    unsigned n = unsigned(1 - long(r));
    return std::pow(x, a) * boost::math::expint(n, x);
  }
  int k = int(std::ceil(-a)) + 1;  // a + k in (0, 1]
  double g = boost::math::tgamma(a + k, x);
  double ex = std::exp(-x);
  for (int i = k; i >= 1; --i) {
    double b = a + i;  // reduce Gamma(b, x) -> Gamma(b-1, x)
    g = (g - std::pow(x, b - 1) * ex) / (b - 1);
  }
  return g;
}

double lower_gamma(double a, double x) { return std::tgamma(a) - upper_gamma(a, x); }

void merge_ladder(std::vector<double>& lam, std::vector<spectrum_line>& out) {
  std::sort(lam.begin(), lam.end());
  for (double v : lam) {
    if (!out.empty() && std::abs(v - out.back().lam) <= 1e-9 * v)
      ++out.back().mult;
    else
      out.push_back({v, 1});
  }
}

}  // namespace

double pairwise_sum(std::vector<double> v) {
  if (v.empty()) return 0;
  size_t n = v.size();
  while (n > 1) {
    size_t h = (n + 1) / 2;
    for (size_t i = 0; i + h < n; ++i) v[i] += v[i + h];
    n = h;
  }
  return v[0];
}

void section_spectrum::validate() const {
  if (int(cex.size()) != m || int(har.size()) != m + 1)
    throw std::runtime_error("spectrum: ladder/harmonic degree count mismatch");
  long c = 0;
  for (int q = 0; q <= m; ++q) {
    if (har[q] < 0) throw std::runtime_error("spectrum: negative harmonic rank");
    c += (q % 2 ? -1 : 1) * har[q];
  }
  if (c != chi) throw std::runtime_error("spectrum: Euler characteristic mismatch");
  for (int q = 0; q < m; ++q) {
    double prev = 0;
    for (auto& e : cex[q]) {
      if (e.lam <= prev || e.mult <= 0) throw std::runtime_error("spectrum: bad ladder");
      prev = e.lam;
    }
    auto& dual = cex[m - 1 - q];
    if (dual.size() != cex[q].size()) throw std::runtime_error("spectrum: duality pairing fails");
    for (size_t i = 0; i < dual.size(); ++i)
      if (dual[i].mult != cex[q][i].mult || std::abs(dual[i].lam - cex[q][i].lam) > 1e-12 * cex[q][i].lam)
        throw std::runtime_error("spectrum: duality pairing fails");
  }
}

section_spectrum circle_spectrum(double r, double cutoff) {
  if (r <= 0 || cutoff <= 0) throw non_positive_parameter("circle radius/cutoff must be positive");
  section_spectrum S;
  S.kind = section_spectrum::circle;
  S.m = 1;
  S.r = r;
  S.har = {1, 1};
  S.chi = 0;
  S.cutoff = cutoff;
  S.cex.resize(1);
  for (long n = 1; double(n) * n / (r * r) <= cutoff; ++n)
    S.cex[0].push_back({double(n) * n / (r * r), 2});
  S.validate();
  return S;
}

section_spectrum flat_torus_spectrum(double L1, double L2, double cutoff) {
  if (L1 <= 0 || L2 <= 0 || cutoff <= 0)
    throw non_positive_parameter("torus sides/cutoff must be positive");
  section_spectrum S;
  S.kind = section_spectrum::torus;
  S.m = 2;
  S.L1 = L1;
  S.L2 = L2;
  S.har = {1, 2, 1};
  S.chi = 0;
  S.cutoff = cutoff;
  std::vector<double> lam;
  long J = long(L1 * std::sqrt(cutoff) / (2 * pi)) + 1;
  for (long j = -J; j <= J; ++j) {
    long K = long(L2 * std::sqrt(cutoff) / (2 * pi)) + 1;
    for (long k = -K; k <= K; ++k) {
      if (j == 0 && k == 0) continue;
      double v = 4 * pi * pi * (double(j) * j / (L1 * L1) + double(k) * k / (L2 * L2));
      if (v <= cutoff) lam.push_back(v);
    }
  }
  S.cex.resize(2);
  merge_ladder(lam, S.cex[0]);
  S.cex[1] = S.cex[0];  // flat Hodge star pairs degrees 0 and 1
  S.validate();
  return S;
}

double torus_zeta(double L1, double L2, double s, double shift) {
  if (s == 0) return -1;
  if (std::abs(s - 1) < 1e-12) throw pole_error("lattice zeta pole at s = 1");
  if (s < 0 && std::abs(s - std::round(s)) < 1e-12) return 0;  // trivial zeros
  double A = L1 * L2 / (4 * pi);
  double h = shift;
  std::vector<double> terms;

  // t >= 1: incomplete-gamma tail over the spectrum
  double B = 60 + 5 * std::max(0.0, s);
  long J = long(L1 * std::sqrt(B) / (2 * pi)) + 1;
  long K = long(L2 * std::sqrt(B) / (2 * pi)) + 1;
  for (long j = -J; j <= J; ++j)
    for (long k = -K; k <= K; ++k) {
      if (j == 0 && k == 0) continue;
      double lam = 4 * pi * pi * (double(j) * j / (L1 * L1) + double(k) * k / (L2 * L2));
      if (lam + h > B) continue;
      terms.push_back(std::pow(lam + h, -s) * upper_gamma(s, lam + h));
    }

  // t <= 1 after the modular transform of the theta function
  if (h > 0) {
    terms.push_back(-std::pow(h, -s) * lower_gamma(s, h));
    terms.push_back(A * std::pow(h, 1 - s) * lower_gamma(s - 1, h));
  } else {
    terms.push_back(-1 / s);
    terms.push_back(A / (s - 1));
  }
  boost::math::quadrature::exp_sinh<double> quad;
  long Jd = long(std::sqrt(240.0) / L1) + 1, Kd = long(std::sqrt(240.0) / L2) + 1;
  for (long j = -Jd; j <= Jd; ++j)
    for (long k = -Kd; k <= Kd; ++k) {
      if (j == 0 && k == 0) continue;
      double c = double(j) * j * L1 * L1 + double(k) * k * L2 * L2;
      if (c / 4 > 60) continue;
      auto f = [&](double t) {  // u = 1 + t on [1, inf)
        double u = 1 + t;
        return std::pow(u, -s) * std::exp(-h / u - c * u / 4);
      };
      terms.push_back(A * quad.integrate(f, 1e-12));
    }
  return pairwise_sum(std::move(terms)) / std::tgamma(s);
}

double torus_zeta_deriv0(double L1, double L2) {
  double A = L1 * L2 / (4 * pi);
  std::vector<double> terms = {-A, -euler};
  double B = 60;
  long J = long(L1 * std::sqrt(B) / (2 * pi)) + 1;
  long K = long(L2 * std::sqrt(B) / (2 * pi)) + 1;
  for (long j = -J; j <= J; ++j)
    for (long k = -K; k <= K; ++k) {
      if (j == 0 && k == 0) continue;
      double lam = 4 * pi * pi * (double(j) * j / (L1 * L1) + double(k) * k / (L2 * L2));
      if (lam <= B) terms.push_back(boost::math::expint(1u, lam));
    }
  long Jd = long(std::sqrt(240.0) / L1) + 1, Kd = long(std::sqrt(240.0) / L2) + 1;
  for (long j = -Jd; j <= Jd; ++j)
    for (long k = -Kd; k <= Kd; ++k) {
      if (j == 0 && k == 0) continue;
      double c4 = (double(j) * j * L1 * L1 + double(k) * k * L2 * L2) / 4;
      if (c4 <= 60) terms.push_back(A * std::exp(-c4) / c4);
    }
  return pairwise_sum(std::move(terms));
}

namespace {

double direct_sum_impl(double L1, double L2, double s, double shift, long R, bool parallel) {
  std::vector<double> rows(2 * R + 1, 0.0);
#ifdef ICT_OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
  for (long j = -R; j <= R; ++j) {
    std::vector<double> row;
    for (long k = -R; k <= R; ++k) {
      if (j == 0 && k == 0) continue;
      if (j * j + k * k > R * R) continue;
      double lam = 4 * pi * pi * (double(j) * j / (L1 * L1) + double(k) * k / (L2 * L2));
      row.push_back(std::pow(lam + shift, -s));
    }
    rows[j + R] = pairwise_sum(std::move(row));
  }
  return pairwise_sum(std::move(rows));
}

}  // namespace

double torus_zeta_direct(double L1, double L2, double s, double shift, long R) {
  return direct_sum_impl(L1, L2, s, shift, R, true);
}
double torus_zeta_direct_serial(double L1, double L2, double s, double shift, long R) {
  return direct_sum_impl(L1, L2, s, shift, R, false);
}

double section_zeta(const section_spectrum& S, int q, double s) {
  if (q < 0 || q >= S.m) throw std::out_of_range("no coexact ladder in this degree");
  switch (S.kind) {
    case section_spectrum::circle:
      if (std::abs(2 * s - 1) < 1e-12) throw pole_error("circle zeta pole at s = 1/2");
      return 2 * std::pow(S.r, 2 * s) * std::riemann_zeta(2 * s);
    case section_spectrum::torus:
      return torus_zeta(S.L1, S.L2, s);
    default: {
      if (2 * s <= S.m)
        throw unsupported_section("truncated ladder: only convergent zeta values supported");
      std::vector<double> terms;
      for (auto& e : S.cex[q]) terms.push_back(double(e.mult) * std::pow(e.lam, -s));
      return pairwise_sum(std::move(terms));
    }
  }
}

double section_zeta_deriv0(const section_spectrum& S, int q) {
  if (q < 0 || q >= S.m) throw std::out_of_range("no coexact ladder in this degree");
  switch (S.kind) {
    case section_spectrum::circle:
      return -2 * std::log(2 * pi * S.r);  // 4 zeta_R'(0) + 4 log(r) zeta_R(0)
    case section_spectrum::torus:
      return torus_zeta_deriv0(S.L1, S.L2);
    default:
      throw unsupported_section("truncated ladder: no regularized derivative");
  }
}

double section_analytic_torsion(const section_spectrum& S) {
  switch (S.kind) {
    case section_spectrum::circle:
      return std::log(2 * pi * S.r);
    case section_spectrum::torus:
      return 0;
    default:
      throw unsupported_section("no closed-form torsion for user ladders");
  }
}

}  // namespace ict
