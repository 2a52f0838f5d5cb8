#include <doctest.h>

#include <cmath>

#include "barnesbeta/mellin.hpp"
#include "barnesbeta/sampling.hpp"
#include "barnesbeta/xi.hpp"

using namespace barnesbeta;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("riemann zeta on the real line") {
  CHECK(riemann_zeta(2.0) == doctest::Approx(kPi * kPi / 6.0).epsilon(1e-13));
  CHECK(riemann_zeta(3.0) == doctest::Approx(1.2020569031595943).epsilon(1e-12));
  CHECK(riemann_zeta(4.0) == doctest::Approx(std::pow(kPi, 4) / 90.0).epsilon(1e-13));
  CHECK(riemann_zeta(0.0) == -0.5);
  CHECK(riemann_zeta(-1.0) == doctest::Approx(-1.0 / 12.0).epsilon(1e-11));
  CHECK(riemann_zeta(-3.0) == doctest::Approx(1.0 / 120.0).epsilon(1e-10));
  CHECK(std::abs(riemann_zeta(-2.0)) < 1e-10);
  CHECK(riemann_zeta(0.5) == doctest::Approx(-1.4603545088095868).epsilon(1e-12));
  CHECK(riemann_zeta(30.0) == doctest::Approx(1.0000000009313275).epsilon(1e-14));
  CHECK_THROWS_AS(riemann_zeta(1.0), pole_error);
}

TEST_CASE("xi values and the reflection symmetry") {
  CHECK(riemann_xi(2.0) == doctest::Approx(kPi / 6.0).epsilon(1e-12));
  CHECK(riemann_xi(4.0) == doctest::Approx(kPi * kPi / 15.0).epsilon(1e-12));
  CHECK(riemann_xi(0.0) == 0.5);
  CHECK(riemann_xi(1.0) == 0.5);
  // direct-formula branch at both reflected points
  CHECK(std::abs(riemann_xi_direct(3.7) - riemann_xi_direct(1.0 - 3.7)) < 1e-10);
  // symmetry on a grid through the public branch
  for (double s : {-5.0, -2.3, -0.4, 0.3, 1.4, 2.6, 4.9, 6.0})
    CHECK(std::abs(riemann_xi(s) - riemann_xi(1.0 - s)) < 1e-12);
  // the zeta pole at s = 1 is handled by the Stieltjes expansion inside
  // |s-1| < 1e-3; frozen 25-digit references on both sides of that window
  CHECK(riemann_xi(1.0005) == doctest::Approx(0.50000577684525573).epsilon(1e-11));
  CHECK(riemann_xi(0.9995) == doctest::Approx(0.49999422899071042).epsilon(1e-11));
  CHECK(riemann_xi(1.002) == doctest::Approx(0.50002314239868915).epsilon(1e-11));
}

TEST_CASE("jacobi theta and its truncations") {
  CHECK(theta(1.0) == doctest::Approx(1.0864348112133080).epsilon(1e-13));
  double t1 = (1.0 - std::exp(-2.0 * kPi)) * std::pow(1.0 + std::exp(-kPi), 2);
  CHECK(theta_trunc(1.0, 1) == doctest::Approx(t1).epsilon(1e-14));
  CHECK(std::abs(theta_trunc(1.0, 10) - theta(1.0)) < 1e-8);
  // modular route agrees with the series
  for (double t : {0.3, 0.7, 2.0})
    CHECK(theta_fast(t) == doctest::Approx(theta(t)).epsilon(1e-13));
  CHECK_THROWS_AS(theta(0.0), domain_error);
  CHECK_THROWS_AS(theta_trunc(1.0, 0), domain_error);
}

TEST_CASE("beta_m_delta parameter construction") {
  BarnesBetaParams p = beta_m_delta(1, 0.7);
  CHECK(p.M == 2);
  CHECK(p.N == 3);
  CHECK(p.b0 == 0.7);
  double hp = 0.5 * kPi * kPi;
  REQUIRE(p.a.size() == 2);
  CHECK(p.a[0] == doctest::Approx(hp));
  CHECK(p.a[1] == doctest::Approx(hp));
  REQUIRE(p.b.size() == 3);
  CHECK(p.b[0] == doctest::Approx(2.0 * hp));
  CHECK(p.b[1] == doctest::Approx(2.0 * hp));
  CHECK(p.b[2] == doctest::Approx(2.0 * hp));
}

TEST_CASE("levy density of beta_M(delta) is the theta kernel") {
  for (int M : {1, 2}) {
    BarnesBetaParams p = beta_m_delta(M, 0.8);
    for (double t : {0.5, 1.0, 2.0}) {
      double lhs = levy_density(p, t);
      double rhs = std::exp(-0.8 * t) * theta_trunc(0.5 * kPi * t, M) / t;
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
  }
}

TEST_CASE("atom mass of beta_M(delta) decreases in M") {
  double prev = 1.0;
  for (int M : {1, 2, 3}) {
    double mass = mass_at_one(beta_m_delta(M, 1.0), MassMethod::quadrature);
    CHECK(mass > 0.0);
    CHECK(mass < prev);
    prev = mass;
  }
}

TEST_CASE("theta-parameter masses by two independent routes") {
  // theta-kernel integral vs the alternating subset sum of L_M values;
  // M = 3 runs 512 six-period quadratures against one 1-D integral
  for (int M : {1, 2, 3}) {
    BarnesBetaParams p = beta_m_delta(M, 1.0);
    double quad = mass_at_one(p, MassMethod::quadrature);
    double subset = mass_at_one(p, MassMethod::sn_formula);
    CHECK(std::abs(quad - subset) < 1e-9);
  }
}

TEST_CASE("C2 Mellin transform") {
  CHECK(c2_mellin(0.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(c2_mellin(1.0) == doctest::Approx(2.0).epsilon(1e-12));     // E[C2] = 2
  CHECK(c2_mellin(-1.0) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  // continuity through the removable point
  CHECK(c2_mellin(-1.0 + 1e-9) == doctest::Approx(c2_mellin(-1.0)).epsilon(1e-7));
}

TEST_CASE("S2(delta) transforms") {
  // Laplace transform at q -> 0 is 1
  CHECK(s2_delta_transform(S2Transform::laplace_closed, 0.0, 1.0) ==
        doctest::Approx(1.0).epsilon(1e-12));
  // delta -> 0 limit: E[e^{-S2}] = (sqrt2/sinh sqrt2)^2
  CHECK(s2_delta_transform(S2Transform::laplace_closed, 1.0, 1e-12) ==
        doctest::Approx(0.5341190429157580).epsilon(1e-9));
  // closed form vs the theta-kernel Levy integral
  for (double q : {0.5, 1.0, 2.0})
    for (double delta : {0.5, 1.0}) {
      double c = s2_delta_transform(S2Transform::laplace_closed, q, delta);
      double l = s2_delta_transform(S2Transform::laplace_levy, q, delta);
      CHECK(std::abs(c - l) < 1e-6);
    }
  // Mellin series at integer q against the elementary sums
  for (double delta : {0.1, 0.5, 2.0}) {
    double m1 = s2_delta_transform(S2Transform::mellin_series, 1.0, delta);
    CHECK(m1 == doctest::Approx(s2_delta_mean(delta)).epsilon(1e-9));
    double m2 = s2_delta_transform(S2Transform::mellin_series, 2.0, delta);
    double expect = s2_delta_variance(delta) + std::pow(s2_delta_mean(delta), 2);
    CHECK(m2 == doctest::Approx(expect).epsilon(1e-9));
  }
  CHECK_THROWS_AS(s2_delta_transform(S2Transform::mellin_series, 1.0, 5.0), domain_error);
}

TEST_CASE("T(delta) sampler against the Laplace and moment oracles") {
  TDeltaParams p;
  p.delta = 0.5;
  p.n_terms = 400;
  RngStream r1(3, 3), r2(3, 3);
  auto a = t_delta_sample(p, r1, 16);
  auto b = t_delta_sample(p, r2, 16);
  CHECK(a == b);

  TDeltaSampler sampler(p);
  const int n = 30000;
  RngStream rng(9, 1);
  SampleStats lap, m1, m2;
  for (int i = 0; i < n; ++i) {
    double t = sampler.draw(rng);
    lap.add(std::exp(-t));
    m1.add(t);
    m2.add(t * t);
  }
  CHECK(std::abs(lap.mean - t_delta_laplace(1.0, 0.5)) < 3.5 * lap.stderr_mean());
  CHECK(std::abs(m1.mean - t_delta_moment_exact(1, p)) < 3.5 * m1.stderr_mean());
  CHECK(std::abs(m2.mean - t_delta_moment_exact(2, p)) < 3.5 * m2.stderr_mean());
}

TEST_CASE("t_delta exact moments compose from the parts") {
  TDeltaParams p;
  p.delta = 0.3;
  CHECK(t_delta_moment_exact(1, p) ==
        doctest::Approx(s2_delta_mean(0.3) + 1.0 / 0.3).epsilon(1e-10));
}

TEST_CASE("functional equation rhs equals the S2(delta) Mellin transform") {
  for (double delta : {0.1, 0.3}) {
    CHECK(t_delta_functional_rhs(1, delta) ==
          doctest::Approx(s2_delta_mean(delta)).epsilon(1e-9));
    double expect = s2_delta_variance(delta) + std::pow(s2_delta_mean(delta), 2);
    CHECK(t_delta_functional_rhs(2, delta) == doctest::Approx(expect).epsilon(1e-9));
  }
}

TEST_CASE("functional equation residual by Monte-Carlo") {
  TDeltaParams p;
  p.n_terms = 400;
  for (int q : {1, 2}) {
    auto rep = t_delta_functional_residual(q, 0.1, p, 60000, 12345, 50 + 10 * q);
    CHECK(rep.residual_in_stderr < 4.0);
    CHECK(rep.n == 60000);
  }
  CHECK_THROWS_AS(t_delta_functional_residual(5, 0.1, p, 100, 1), domain_error);
  CHECK_THROWS_AS(t_delta_functional_residual(1, 6.0, p, 100, 1), domain_error);
}

TEST_CASE("parameter validation") {
  TDeltaParams bad;
  bad.n_terms = 10;
  CHECK_THROWS_AS(bad.validate(), domain_error);
  CHECK_THROWS_AS(beta_m_delta(0, 1.0), domain_error);
  CHECK_THROWS_AS(beta_m_delta(1, -1.0), domain_error);
}
