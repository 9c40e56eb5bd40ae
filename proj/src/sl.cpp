#include "ict/sl.hpp"

#include <array>
#include <functional>
#include <cmath>
#include <numbers>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/numeric/odeint.hpp>

namespace ict {

namespace {

constexpr double pi = std::numbers::pi;

// truncated power series helpers
using series = std::vector<double>;

series mul(const series& a, const series& b) {
  size_t n = a.size();
  series c(n, 0.0);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; i + j < n; ++j) c[i + j] += a[i] * b[j];
  return c;
}

series div(const series& a, const series& b) {  // b[0] != 0
  size_t n = a.size();
  series c(n, 0.0);
  for (size_t i = 0; i < n; ++i) {
    double s = a[i];
    for (size_t j = 1; j <= i; ++j) s -= b[j] * c[i - j];
    c[i] = s / b[0];
  }
  return c;
}

// Laurent coefficients q_j, j >= -1, of the potential (q_{-2} = nu^2 - 1/4)
series potential_tail(const profile& pr, double nu, double alpha, size_t n) {
  series H(n, 0.0), Hp(n, 0.0);
  H[0] = 1;
  for (size_t i = 0; i + 1 < n && i < pr.c.size(); ++i) H[i + 1] = pr.c[i];
  for (size_t i = 0; i + 1 < n; ++i) Hp[i] = (i + 1) * H[i + 1];
  series one_xg(n, 0.0);  // (H + x H')/H = 1 + x h'/h - 1 ... = x h'/h * H/H
  for (size_t i = 0; i < n; ++i) one_xg[i] = H[i] + (i ? Hp[i - 1] : 0.0);
  series s1 = mul(div(one_xg, H), div(one_xg, H));  // (x h'/h)^2 = x^2 h'^2/h^2
  series num(n, 0.0);                               // x h''/h = (2H' + x H'')/H
  for (size_t i = 0; i + 1 < n; ++i) num[i] = double(i + 2) * (i + 1) * H[i + 1];
  series s2 = div(num, H);
  series one(n, 0.0);
  one[0] = 1;
  series s3 = div(div(one, H), H);  // 1/H^2
  series out(n, 0.0);               // out[i] = q_{i-1}
  for (size_t i = 0; i + 1 < n; ++i)
    out[i] = (alpha * alpha - 0.25) * s1[i + 1] + (nu * nu - alpha * alpha) * s3[i + 1] -
             (alpha - 0.5) * s2[i];
  return out;
}

}  // namespace

double profile::h(double x) const {
  double H = 1;
  for (size_t i = 0; i < c.size(); ++i) H += c[i] * std::pow(x, double(i + 1));
  return x * H;
}
double profile::hp(double x) const {
  double H = 1, Hp = 0;
  for (size_t i = 0; i < c.size(); ++i) {
    H += c[i] * std::pow(x, double(i + 1));
    Hp += (i + 1) * c[i] * std::pow(x, double(i));
  }
  return H + x * Hp;
}
double profile::hpp(double x) const {
  double Hp = 0, Hpp = 0;
  for (size_t i = 0; i < c.size(); ++i) {
    Hp += (i + 1) * c[i] * std::pow(x, double(i));
    if (i >= 1) Hpp += double(i + 1) * i * c[i] * std::pow(x, double(i - 1));
  }
  return 2 * Hp + x * Hpp;
}

double fundamental_solution::qval(double x) const {
  double h = P_.prof.h(x), hp = P_.prof.hp(x), hpp = P_.prof.hpp(x);
  return -(P_.alpha - 0.5) * hpp / h + (P_.alpha * P_.alpha - 0.25) * hp * hp / (h * h) +
         (P_.nu * P_.nu - P_.alpha * P_.alpha) / (h * h);
}

fundamental_solution::fundamental_solution(const sl_problem& P, double lambda, bool plus)
    : P_(P), lam_(lambda) {
  double nu = P.nu;
  sigma_ = 0.5 + (plus ? nu : -nu);
  rho_ = std::min(P.l / 4, 0.25);
  size_t N = 600;
  series q = potential_tail(P.prof, nu, P.alpha, N + 2);  // q[j] = q_{j-1}
  auto qe = [&](long j) { return (j == 0 ? q[1] - lam_ : q[j + 1]); };

  auto run = [&](std::vector<double>& a, bool minus_branch) {
    a.assign(N, 0.0);
    a[0] = 1;
    long n0 = -1;
    double two_nu = 2 * nu;
    if (minus_branch && std::abs(two_nu - std::round(two_nu)) < 1e-9) n0 = std::lround(two_nu);
    double scale = 1;
    size_t quiet = 0;
    for (size_t n = 1; n < N; ++n) {
      double rhs = 0;
      for (long j = -1; j <= long(n) - 2; ++j) rhs += qe(j) * a[n - 2 - j];
      double den = double(n) * (n + (minus_branch ? -two_nu : two_nu));
      if (minus_branch && long(n) == n0) {
        if (std::abs(rhs) > 1e-14 * scale) {
          logterm_ = true;
          logb_ = rhs / n0;
        }
        a[n] = 0;
      } else if (minus_branch && logterm_ && long(n) > n0) {
        a[n] = (rhs - logb_ * cplus_[n - n0] * (2.0 * n - n0)) / den;
      } else {
        a[n] = rhs / den;
      }
      double t = std::abs(a[n]) * std::pow(rho_, double(n));
      scale = std::max(scale, t);
      quiet = (t < 1e-18 * scale) ? quiet + 1 : 0;
      if (quiet >= 6) {
        a.resize(n + 1);
        return;
      }
    }
    throw series_divergence("Frobenius series did not converge at the handoff radius");
  };

  bool nu0 = std::abs(nu) < 1e-12;
  if (plus) {
    run(a_, false);
  } else {
    if (nu >= 1) throw std::invalid_argument("minus extension requires nu < 1");
    run(cplus_, false);  // companion for a possible log term
    if (nu0) {
      logterm_ = true;
      logb_ = 1;
      a_.assign(N, 0.0);  // u_- = u_+ log x + x^{1/2} F, F(0) = 0
      // recurrence with sigma = 1/2, a_0 = 0, forced log term
      a_[0] = 0;
      double scale = 1;
      size_t quiet = 0;
      bool done = false;
      for (size_t n = 1; n < N && !done; ++n) {
        double rhs = 0;
        for (long j = -1; j <= long(n) - 2; ++j) rhs += qe(j) * a_[n - 2 - j];
        a_[n] = (rhs - (n < cplus_.size() ? cplus_[n] : 0.0) * 2.0 * n) / double(n * n);
        double t = std::abs(a_[n]) * std::pow(rho_, double(n));
        scale = std::max(scale, t);
        quiet = (t < 1e-18 * scale) ? quiet + 1 : 0;
        if (quiet >= 6) {
          a_.resize(n + 1);
          done = true;
        }
      }
      if (!done) throw series_divergence("log-branch series did not converge");
    } else {
      run(a_, true);
    }
  }
}

sl_eval fundamental_solution::series_at(double x) const {
  auto horner = [&](const std::vector<double>& a, double sg, double& u, double& du) {
    double s = 0, sd = 0;
    for (size_t k = a.size(); k-- > 0;) {
      s = s * x + a[k];
      sd = sd * x + a[k] * (sg + k);
    }
    u = std::pow(x, sg) * s;
    du = std::pow(x, sg - 1) * sd;
  };
  sl_eval e;
  horner(a_, sigma_, e.u, e.du);
  if (logterm_) {
    double up, dup;
    horner(cplus_, 0.5 + P_.nu, up, dup);
    e.u += logb_ * up * std::log(x);
    e.du += logb_ * (dup * std::log(x) + up / x);
  }
  return e;
}

sl_eval fundamental_solution::at(double x) const { return at(std::vector<double>{x})[0]; }

std::vector<sl_eval> fundamental_solution::at(std::vector<double> xs) const {
  namespace od = boost::numeric::odeint;
  using state = std::array<double, 2>;
  std::vector<sl_eval> out;
  out.reserve(xs.size());
  auto rhs = [&](const state& y, state& dy, double x) {
    dy[0] = y[1];
    dy[1] = (qval(x) - lam_) * y[0];
  };
  auto stepper = od::make_controlled(1e-13, 1e-13, od::runge_kutta_fehlberg78<state>());
  double x0 = rho_;
  sl_eval e0 = series_at(rho_);
  state y = {e0.u, e0.du};
  for (double x : xs) {
    if (x <= rho_) {
      out.push_back(series_at(x));
      continue;
    }
    od::integrate_adaptive(stepper, rhs, y, x0, x, (x - x0) / 64);
    x0 = x;
    out.push_back({y[0], y[1]});
  }
  return out;
}

namespace {

double bc_value(const sl_problem& P, const sl_eval& e, sl_problem::bc_t bc, double x,
                const profile& pr) {
  if (bc == sl_problem::rel) return e.u;
  double h = pr.h(x), hp = pr.hp(x);
  return std::pow(h, P.alpha - 0.5) * ((P.alpha - 0.5) * (hp / h) * e.u + e.du);
}

}  // namespace

double characteristic_B(const sl_problem& P, double lambda) {
  fundamental_solution F(P, lambda, P.ext == sl_problem::plus);
  return bc_value(P, F.at(P.l), P.bc, P.l, P.prof);
}

namespace {

std::vector<double> scan_zeros(const std::function<double(double)>& f, double dz, double zmax,
                               size_t K) {
  std::vector<double> out;
  double z0 = 1e-3, f0 = f(z0 * z0);
  for (double z = z0 + dz; z <= zmax && out.size() < K; z += dz) {
    double f1 = f(z * z);
    if (f0 == 0) throw bracket_failure("characteristic function vanished at a sample point");
    if ((f0 < 0) != (f1 < 0)) {
      double a = z - dz, b = z, fa = f0;
      for (int it = 0; it < 80 && (b - a) > 1e-15 * b; ++it) {
        double m = 0.5 * (a + b), fm = f(m * m);
        if (fm == 0) {
          a = b = m;
          break;
        }
        if ((fa < 0) != (fm < 0))
          b = m;
        else
          a = m, fa = fm;
      }
      out.push_back(0.25 * (a + b) * (a + b));
    }
    f0 = f1;
  }
  if (out.size() < K) throw bracket_failure("not enough sign changes below the scan bound");
  return out;
}

}  // namespace

std::vector<double> eigenvalues(const sl_problem& P, size_t K) {
  double dz = 0.3 / P.l;
  double zmax = (K + P.nu + 12) * pi / P.l * 2;
  return scan_zeros([&](double lam) { return characteristic_B(P, lam); }, dz, zmax, K);
}

double zeta_determinant(const sl_problem& P) {
  bool minus = P.ext == sl_problem::minus;
  double nu = P.nu;
  if (minus && nu >= 1) throw std::invalid_argument("minus extension requires nu < 1");
  int dimker = 0;
  if (P.bc == sl_problem::abs) {
    if (!minus && std::abs(P.alpha + nu) < 1e-12) dimker = 1;
    if (minus && P.alpha > 0 && std::abs(P.alpha - nu) < 1e-12) dimker = 1;
  }
  double B0;
  if (dimker == 0) {
    B0 = characteristic_B(P, 0);
  } else {
    double eps = 1e-5;
    B0 = (characteristic_B(P, eps) - characteristic_B(P, -eps)) / (2 * eps);
  }
  double sgn = minus ? -1 : 1;
  double rz = std::log(std::pow(2.0, sgn * nu - 0.5) * std::tgamma(1 + sgn * nu) /
                       std::sqrt(pi));
  if (P.bc == sl_problem::abs) rz += (P.alpha - 0.5) * std::log(P.prof.h(P.l));
  return std::log(std::abs(B0)) - rz;
}

double ladder_zeta_determinant(const std::vector<double>& ladder, double l) {
  if (ladder.empty()) throw unknown_asymptotics("empty ladder");
  auto matches = [&](auto model) {
    for (size_t k = 0; k < ladder.size(); ++k) {
      double m = model(k + 1);
      if (std::abs(ladder[k] - m) > 1e-9 * m) return false;
    }
    return true;
  };
  if (matches([&](size_t k) { return std::pow(pi * k / l, 2); })) return std::log(2 * l);
  if (matches([&](size_t k) { return std::pow((2.0 * k - 1) * pi / (2 * l), 2); }))
    return std::log(2.0);
  throw unknown_asymptotics("ladder has no recognized closed-form determinant");
}

double frustum_characteristic(const frustum_problem& P, double lambda) {
  namespace od = boost::numeric::odeint;
  using state = std::array<double, 4>;  // v1, v1', v2, v2'
  sl_problem Q;
  Q.nu = P.nu;
  Q.alpha = P.alpha;
  Q.prof = P.prof;
  auto qv = [&](double x) {
    double h = P.prof.h(x), hp = P.prof.hp(x), hpp = P.prof.hpp(x);
    return -(P.alpha - 0.5) * hpp / h + (P.alpha * P.alpha - 0.25) * hp * hp / (h * h) +
           (P.nu * P.nu - P.alpha * P.alpha) / (h * h);
  };
  auto rhs = [&](const state& y, state& dy, double x) {
    double q = qv(x) - lambda;
    dy[0] = y[1];
    dy[1] = q * y[0];
    dy[2] = y[3];
    dy[3] = q * y[2];
  };
  state y = {1, 0, 0, 1};
  auto stepper = od::make_controlled(1e-13, 1e-13, od::runge_kutta_fehlberg78<state>());
  od::integrate_adaptive(stepper, rhs, y, P.a, P.b, (P.b - P.a) / 64);
  sl_eval v1a{1, 0}, v2a{0, 1}, v1b{y[0], y[1]}, v2b{y[2], y[3]};
  double a11 = bc_value(Q, v1a, P.bc_a, P.a, P.prof), a12 = bc_value(Q, v2a, P.bc_a, P.a, P.prof);
  double a21 = bc_value(Q, v1b, P.bc_b, P.b, P.prof), a22 = bc_value(Q, v2b, P.bc_b, P.b, P.prof);
  return a11 * a22 - a12 * a21;
}

std::vector<double> frustum_eigenvalues(const frustum_problem& P, size_t K) {
  double L = P.b - P.a;
  return scan_zeros([&](double lam) { return frustum_characteristic(P, lam); }, 0.3 / L,
                    (K + P.nu + 12) * pi / L * 2, K);
}

double perturbation_bound(const sl_problem& P, size_t K, double* slope) {
  sl_problem F = P;
  F.prof.c.clear();
  auto lam = eigenvalues(P, K);
  auto lam0 = eigenvalues(F, K);
  double mx = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t k = 0; k < K; ++k) {
    double d = std::abs(lam[k] - lam0[k]);
    mx = std::max(mx, d);
    sx += k;
    sy += d;
    sxx += double(k) * k;
    sxy += k * d;
  }
  if (slope) *slope = (K * sxy - sx * sy) / (K * sxx - sx * sx);
  return mx;
}

double bessel_zero(double nu, int k) { return boost::math::cyl_bessel_j_zero(nu, k); }

}  // namespace ict
