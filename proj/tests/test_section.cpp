#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ict/section.hpp"

using namespace ict;
static const double pi = std::numbers::pi;

TEST_CASE("circle spectrum") {
  auto S = circle_spectrum(1.0, 100);
  CHECK(S.m == 1);
  CHECK(S.har == std::vector<long>{1, 1});
  REQUIRE(S.cex[0].size() == 10);
  CHECK(S.cex[0][0].lam == 1);
  CHECK(S.cex[0][0].mult == 2);
  CHECK(S.cex[0][4].lam == 25);
  auto S2 = circle_spectrum(2.0, 100);
  CHECK(S2.cex[0][0].lam == doctest::Approx(0.25));
  CHECK_THROWS_AS(circle_spectrum(-1), non_positive_parameter);
}

TEST_CASE("torus spectrum") {
  auto S = flat_torus_spectrum(2 * pi, 2 * pi, 30);
  // j^2 + k^2 multiset: 1x4, 2x4, 4x4, 5x8, 8x4, 9x4, 10x8, 13x8, ...
  REQUIRE(S.cex[0].size() >= 6);
  CHECK(S.cex[0][0].lam == doctest::Approx(1));
  CHECK(S.cex[0][0].mult == 4);
  CHECK(S.cex[0][1].lam == doctest::Approx(2));
  CHECK(S.cex[0][1].mult == 4);
  CHECK(S.cex[0][3].lam == doctest::Approx(5));
  CHECK(S.cex[0][3].mult == 8);
  CHECK(S.har == std::vector<long>{1, 2, 1});
  CHECK(S.cex[1].size() == S.cex[0].size());  // flat Hodge star pairing
  S.validate();
  // rectangular: lowest eigenvalue from the longer side
  auto R = flat_torus_spectrum(2 * pi, 4 * pi, 30);
  CHECK(R.cex[0][0].lam == doctest::Approx(0.25));
  CHECK(R.cex[0][0].mult == 2);
}

TEST_CASE("weyl counting") {
  double cutoff = 1e4;
  auto S = circle_spectrum(1.5, cutoff);
  long cnt = 0;
  for (auto& e : S.cex[0]) cnt += e.mult;
  CHECK(std::abs(cnt / std::sqrt(cutoff) - 2 * 1.5) < 0.1 * 2 * 1.5);
  auto T = flat_torus_spectrum(2 * pi, 2 * pi, cutoff);
  cnt = 0;
  for (auto& e : T.cex[0]) cnt += e.mult;
  CHECK(std::abs(cnt / cutoff - pi) < 0.1 * pi);
}

TEST_CASE("circle zeta values") {
  auto S = circle_spectrum(1.0, 10);
  CHECK(section_zeta(S, 0, 0) == doctest::Approx(-1).epsilon(1e-14));
  CHECK(section_zeta(S, 0, 3) == doctest::Approx(2 * std::riemann_zeta(6.0)).epsilon(1e-14));
  CHECK(section_zeta_deriv0(S, 0) == doctest::Approx(-2 * std::log(2 * pi)).epsilon(1e-14));
  auto S2 = circle_spectrum(2.0, 10);
  CHECK(section_zeta_deriv0(S2, 0) == doctest::Approx(-2 * std::log(4 * pi)).epsilon(1e-14));
  CHECK_THROWS_AS(section_zeta(S, 0, 0.5), pole_error);
}

TEST_CASE("torus zeta continuation vs direct sums") {
  double L = 2 * pi;
  CHECK(torus_zeta(L, L, 3) == doctest::Approx(torus_zeta_direct(L, L, 3, 0, 400)).epsilon(1e-10));
  CHECK(torus_zeta(L, L, 4) == doctest::Approx(torus_zeta_direct(L, L, 4, 0, 200)).epsilon(1e-10));
  CHECK(torus_zeta(L, L, 2.5) ==
        doctest::Approx(torus_zeta_direct(L, L, 2.5, 0, 1300)).epsilon(1e-9));
  // shifted spectrum
  CHECK(torus_zeta(L, L, 3, 0.25) ==
        doctest::Approx(torus_zeta_direct(L, L, 3, 0.25, 400)).epsilon(1e-10));
  // special value and pole
  CHECK(torus_zeta(L, L, 0) == -1);
  CHECK_THROWS_AS(torus_zeta(L, L, 1), pole_error);
  // a rectangular lattice too
  CHECK(torus_zeta(2 * pi, 4 * pi, 3) ==
        doctest::Approx(torus_zeta_direct(2 * pi, 4 * pi, 3, 0, 800)).epsilon(1e-10));
}

TEST_CASE("torus zeta derivative at zero") {
  double L = 2 * pi;
  // Z(s) = 4 zeta(s) beta(s) for the square unit-eigenvalue lattice
  double beta0p = std::log(std::pow(std::tgamma(0.25), 2) / (2 * pi * std::sqrt(2.0)));
  double expected = -std::log(2 * pi) - 2 * beta0p;
  CHECK(torus_zeta_deriv0(L, L) == doctest::Approx(expected).epsilon(1e-12));
  // central difference cross-check
  double h = 1e-5;
  double fd = (torus_zeta(L, L, h) - torus_zeta(L, L, -h)) / (2 * h);
  CHECK(torus_zeta_deriv0(L, L) == doctest::Approx(fd).epsilon(1e-6));
  // lattice scaling shifts the derivative by -log(L^2/4pi^2) (since Z(0) = -1)
  CHECK(torus_zeta_deriv0(3, 3) ==
        doctest::Approx(expected - std::log(9 / (4 * pi * pi))).epsilon(1e-10));
}

TEST_CASE("parallel and serial lattice sums agree bitwise") {
  double a = torus_zeta_direct(2 * pi, 2 * pi, 3, 0.1, 300);
  double b = torus_zeta_direct_serial(2 * pi, 2 * pi, 3, 0.1, 300);
  CHECK(a == b);
}

TEST_CASE("analytic torsion of the built-ins") {
  CHECK(section_analytic_torsion(circle_spectrum(1.0, 10)) == doctest::Approx(std::log(2 * pi)));
  CHECK(section_analytic_torsion(circle_spectrum(2.5, 10)) ==
        doctest::Approx(std::log(5 * pi)));
  CHECK(section_analytic_torsion(flat_torus_spectrum(2 * pi, 2 * pi, 10)) == 0);
  section_spectrum C;
  C.kind = section_spectrum::custom;
  C.m = 1;
  C.cex = {{{9.0, 1}}};
  C.har = {1, 1};
  CHECK_THROWS_AS(section_analytic_torsion(C), unsupported_section);
  CHECK(section_zeta(C, 0, 2) == doctest::Approx(1.0 / 81));
  CHECK_THROWS_AS(section_zeta_deriv0(C, 0), unsupported_section);
}

TEST_CASE("alpha table") {
  auto S = flat_torus_spectrum(2 * pi, 2 * pi, 10);
  CHECK(S.alpha(0) == doctest::Approx(-0.5));
  CHECK(S.alpha(1) == doctest::Approx(0.5));
  CHECK(S.alpha(2) == doctest::Approx(1.5));
  CHECK(circle_spectrum(1, 10).alpha(0) == 0);
}
