#include <doctest.h>

#include <cmath>
#include <complex>

#include "barnesbeta/mellin.hpp"
#include "barnesbeta/sampling.hpp"
#include "barnesbeta/multigamma.hpp"
#include "barnesbeta/specfun.hpp"

using namespace barnesbeta;
using cd = std::complex<double>;

TEST_CASE("s_operator kills low-degree polynomials") {
  std::vector<double> b{1.0, 2.0, 0.5};
  auto c = [](cd) { return cd(3.7); };
  CHECK(std::abs(s_operator(c, cd(0.4), 1.0, b)) < 1e-14);
  for (int n = 0; n < 3; ++n) {
    auto h = [n](cd x) { return std::pow(x, n); };
    CHECK(std::abs(s_operator(h, cd(0.9), 1.0, b)) < 1e-11);
  }
  // n = N: value independent of q
  auto h3 = [](cd x) { return x * x * x; };
  cd v1 = s_operator(h3, cd(0.0), 1.0, b);
  cd v2 = s_operator(h3, cd(2.7), 1.0, b);
  CHECK(std::abs(v1 - v2) < 1e-9 * std::abs(v1));
  CHECK(std::abs(v1) > 1e-8);
}

TEST_CASE("eta normalization and the M = 0 closed form") {
  BarnesBetaParams p({}, 1.0, {1.0});
  CHECK(eta(p, cd(0.0)).value == cd(1.0));
  for (double q : {0.5, 1.0, 3.0}) {
    double expect = (q + 2.0) / (2.0 * (q + 1.0));
    CHECK(eta(p, cd(q)).value.real() == doctest::Approx(expect).epsilon(1e-13));
  }
  CHECK(eta(p, cd(1.0)).value.real() == doctest::Approx(0.75));
  CHECK_THROWS_AS(eta(p, cd(-1.5)), domain_error);
  CHECK_THROWS_AS(eta(p, cd(-1.0)), domain_error);
}

TEST_CASE("eta at the M = N = 2 worked example vs the Gamma_2 ratio") {
  BarnesBetaParams p({1.0, 2.0}, 1.0, {1.0, 1.0});
  GammaParams g({1.0, 2.0});
  auto L = [&](double w) { return log_multi_gamma(g, cd(w)).value; };
  double q = 1.0;
  cd ratio = std::exp(L(q + 1.0) - L(1.0) + L(2.0) - L(q + 2.0) + L(2.0) - L(q + 2.0) +
                      L(q + 3.0) - L(3.0));
  CHECK(std::abs(eta(p, cd(q)).value - ratio) < 1e-8 * std::abs(ratio));
}

TEST_CASE("eta is a Mellin transform of a law on (0,1]") {
  std::vector<BarnesBetaParams> set = {
      BarnesBetaParams({1.0}, 1.0, {1.0}),
      BarnesBetaParams({1.0}, 1.0, {1.0, 2.0}),
      BarnesBetaParams({1.0, 2.0}, 1.0, {1.0, 1.0}),
  };
  for (const auto& p : set) {
    for (double q : {0.0, 0.5, 1.0, 2.0, 5.0, 10.0}) {
      double v = eta(p, cd(q)).value.real();
      CHECK(v <= 1.0 + 1e-12);
      CHECK(v > 0.0);
    }
    // conjugate symmetry
    cd q(0.7, 0.9);
    cd v = eta(p, q).value, vc = eta(p, std::conj(q)).value;
    CHECK(std::abs(vc - std::conj(v)) < 1e-12);
    // complete monotonicity proxy: alternating differences of -log eta
    auto f = [&](double x) { return -std::log(eta(p, cd(x)).value.real()); };
    double h = 0.5;
    for (double q0 : {0.0, 1.0}) {
      double d1 = f(q0 + h) - f(q0);
      double d2 = f(q0 + 2 * h) - 2 * f(q0 + h) + f(q0);
      double d3 = f(q0 + 3 * h) - 3 * f(q0 + 2 * h) + 3 * f(q0 + h) - f(q0);
      CHECK(d1 >= 0.0);
      CHECK(d2 <= 1e-12);
      CHECK(d3 >= -1e-12);
    }
  }
}

TEST_CASE("levy exponent matches eta and its limits") {
  BarnesBetaParams p01({}, 1.0, {1.0});
  CHECK(std::abs(levy_exponent(p01, cd(0.0))) < 1e-14);
  for (double q : {-0.5, 0.3, 0.9, 2.0}) {
    cd expo = levy_exponent(p01, cd(q));
    CHECK(std::abs(std::exp(expo) - eta(p01, cd(q)).value) < 1e-7);
  }
  BarnesBetaParams p12({1.0}, 1.0, {1.0, 2.0});
  for (double q : {-0.3, 0.5})
    CHECK(std::abs(std::exp(levy_exponent(p12, cd(q))) - eta(p12, cd(q)).value) < 1e-7);
  // exponent approaches -levy mass for large positive q (total mass log 2)
  double expo_inf = levy_exponent(p01, cd(1e4)).real();
  CHECK(std::abs(expo_inf + std::log(2.0)) < 2e-4);
  CHECK(levy_mass(p01) == doctest::Approx(std::log(2.0)).epsilon(1e-10));
  CHECK_THROWS_AS(levy_exponent(p01, cd(-2.0)), domain_error);
}

TEST_CASE("mass at one by the three routes") {
  BarnesBetaParams p01({}, 1.0, {1.0});
  BarnesBetaParams p02({}, 1.0, {1.0, 1.0});
  for (auto m : {MassMethod::quadrature, MassMethod::sn_formula, MassMethod::product}) {
    CHECK(mass_at_one(p01, m) == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(mass_at_one(p02, m) == doctest::Approx(0.75).epsilon(1e-10));
  }
  BarnesBetaParams p12({1.0}, 1.0, {1.0, 2.0});
  double a = mass_at_one(p12, MassMethod::quadrature);
  double b = mass_at_one(p12, MassMethod::sn_formula);
  double c = mass_at_one(p12, MassMethod::product);
  CHECK(std::abs(a - b) < 1e-6);
  CHECK(std::abs(a - c) < 1e-6);
  // absolutely continuous case has no atom
  BarnesBetaParams p11({1.0}, 1.0, {1.0});
  CHECK_THROWS_AS(mass_at_one(p11, MassMethod::quadrature), domain_error);
}

TEST_CASE("integral moments") {
  // M = 0 goes through eta directly
  BarnesBetaParams p01({}, 1.0, {1.0});
  CHECK(moment_int(p01, 1, +1, 0) == doctest::Approx(0.75).epsilon(1e-12));

  // first moment of the M = N = 2 law with tau = 2 against the gamma ratio
  BarnesBetaParams p22({1.0, 2.0}, 1.0, {1.0, 1.0});
  double expect = std::exp(std::lgamma(2.0 / 2.0) + std::lgamma(2.0 / 2.0) -
                           std::lgamma(1.0 / 2.0) - std::lgamma(3.0 / 2.0));
  CHECK(moment_int(p22, 1, +1, 0) == doctest::Approx(expect).epsilon(1e-9));

  // consistency with eta at q = k a_i
  BarnesBetaParams p12({1.0}, 1.0, {1.0, 2.0});
  for (int k : {1, 2, 3})
    CHECK(moment_int(p12, k, +1, 0) ==
          doctest::Approx(eta(p12, cd(double(k))).value.real()).epsilon(1e-8));
  CHECK(moment_int(p22, 2, +1, 1) ==
        doctest::Approx(eta(p22, cd(4.0)).value.real()).epsilon(1e-8));

  // negative moments and their domain guard
  BarnesBetaParams pneg({1.0}, 3.5, {1.0, 2.0});
  for (int k : {1, 2, 3})
    CHECK(moment_int(pneg, k, -1, 0) ==
          doctest::Approx(eta(pneg, cd(-double(k))).value.real()).epsilon(1e-8));
  CHECK_THROWS_AS(moment_int(pneg, 4, -1, 0), domain_error);
}

TEST_CASE("a_i = 1 hypergeometric form (Pochhammer products)") {
  // tau = 1: E[beta^k] = [G(b0+b1)G(b0+b2)/(G(b0)G(b0+b1+b2))]^k *
  //   prod_i (b0+b1)_i (b0+b2)_i / ((b0)_i (b0+b1+b2)_i)
  double b0 = 1.3, b1 = 0.8, b2 = 1.1;
  BarnesBetaParams p({1.0, 1.0}, b0, {b1, b2});
  auto poch = [](double x, int i) {
    double v = 1.0;
    for (int j = 0; j < i; ++j) v *= x + j;
    return v;
  };
  double base = std::exp(std::lgamma(b0 + b1) + std::lgamma(b0 + b2) - std::lgamma(b0) -
                         std::lgamma(b0 + b1 + b2));
  for (int k : {1, 2, 3}) {
    double expect = std::pow(base, k);
    for (int i = 0; i < k; ++i)
      expect *= poch(b0 + b1, i) * poch(b0 + b2, i) / (poch(b0, i) * poch(b0 + b1 + b2, i));
    CHECK(moment_int(p, k, +1, 0) == doctest::Approx(expect).epsilon(1e-8));
  }
}

TEST_CASE("shintani factorization of eta") {
  // single-factor telescoping check: eta_{1,1}(1) = 1/2
  BarnesBetaParams p11({1.0}, 1.0, {1.0});
  CHECK(eta(p11, cd(1.0)).value.real() == doctest::Approx(0.5).epsilon(1e-12));
  auto prod = eta_shintani_product(p11, cd(1.0), 0);
  CHECK(prod.value.real() == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(eta_shintani_product(p11, cd(0.0), 0).value == cd(1.0));

  // the M = N = 2 worked example against direct eta
  BarnesBetaParams p22({1.0, 2.0}, 1.0, {1.0, 1.0});
  for (double q : {0.7, 1.0}) {
    cd direct = eta(p22, cd(q)).value;
    cd viaprod = eta_shintani_product(p22, cd(q), 1).value;
    CHECK(std::abs(direct - viaprod) < 1e-5 * std::abs(direct));
  }
}

TEST_CASE("lattice multiplicity matches the box count") {
  for (int M : {1, 2, 3}) {
    for (int k = 0; k <= 20; ++k) {
      // count tuples with n_1 + ... + n_M = k by brute force
      int count = 0;
      std::vector<int> idx(size_t(M), 0);
      while (true) {
        int s = 0;
        for (int v : idx) s += v;
        if (s == k) ++count;
        int j = 0;
        while (j < M && ++idx[size_t(j)] > k) idx[size_t(j++)] = 0;
        if (j == M) break;
      }
      CHECK(lattice_multiplicity(k, M) == doctest::Approx(double(count)));
    }
  }
}

TEST_CASE("barnes lattice factorization of eta") {
  // M = 0 is exact in a single factor
  BarnesBetaParams p02({}, 1.0, {1.0, 1.0});
  auto r0 = eta_barnes_product(p02, cd(0.8), 10);
  CHECK(std::abs(r0.raw - eta(p02, cd(0.8)).value) < 1e-13);

  // M = 1, N = 2 at K = 1e4 with extrapolation
  BarnesBetaParams p12({1.0}, 1.0, {1.0, 2.0});
  cd direct = eta(p12, cd(1.0)).value;
  auto r = eta_barnes_product(p12, cd(1.0), 10000);
  CHECK(std::abs(r.extrapolated - direct) < 1e-4 * std::abs(direct));

  // collapsed form (all a_i = 1) equals an explicit simplex enumeration:
  // multiplicity (k|M) counts the lattice points with n_1 + n_2 = k
  BarnesBetaParams p22({1.0, 1.0}, 1.0, {0.7, 1.3});
  const int box = 20;
  cd q(0.6);
  auto factor_log = [&](double omega) {
    cd lg = 0.0;
    for (unsigned mask = 0; mask < 4u; ++mask) {
      double shift = p22.b0 + omega;
      if (mask & 1u) shift += p22.b[0];
      if (mask & 2u) shift += p22.b[1];
      double sign = (mask == 0u || mask == 3u) ? 1.0 : -1.0;
      lg += sign * (std::log(cd(shift)) - std::log(q + shift));
    }
    return lg;
  };
  cd collapsed = 0.0;
  for (int k = 0; k <= box; ++k) collapsed += lattice_multiplicity(k, 2) * factor_log(double(k));
  cd simplex = 0.0;
  for (int n1 = 0; n1 <= box; ++n1)
    for (int n2 = 0; n2 <= box - n1; ++n2) simplex += factor_log(double(n1 + n2));
  CHECK(std::abs(collapsed - simplex) < 1e-12);
}

TEST_CASE("sl_action lattice product vs the subset sum") {
  BarnesBetaParams p12({1.0}, 1.0, {1.0, 2.0});
  for (double q : {0.0, 0.7}) {
    double direct = std::exp(-s_log_gamma(p12, cd(q)).value.real());
    auto r = sl_action_product(p12, cd(q), 20000);
    CHECK(r.extrapolated.real() == doctest::Approx(direct).epsilon(1e-6));
  }
}

TEST_CASE("moment via the lattice product route") {
  BarnesBetaParams p12({1.0}, 1.0, {1.0, 2.0});
  double direct = moment_int(p12, 2, +1, 0);
  double viaprod = moment_barnes_product(p12, 2, 0, 20000);
  CHECK(viaprod == doctest::Approx(direct).epsilon(1e-6));
}

TEST_CASE("levy mean equals the transform derivative at zero") {
  BarnesBetaParams p12({1.0}, 1.0, {1.0, 2.0});
  double mean = levy_mean(p12);
  double h = 1e-4;
  double d = -(std::log(eta(p12, cd(h)).value.real()) -
               std::log(eta(p12, cd(-h)).value.real())) /
             (2.0 * h);
  CHECK(mean == doctest::Approx(d).epsilon(1e-6));
}

TEST_CASE("beta identity residuals") {
  BetaIdentityKnobs k;

  // functional equation at the worked example
  BarnesBetaParams p22({1.0, 2.0}, 1.0, {1.0, 1.0});
  k.q_grid = {cd(0.7)};
  k.period_index = 0;
  CHECK(beta_identity_residual(BetaIdentity::funceq, p22, k).residual < 1e-7);
  k.period_index = 1;
  CHECK(beta_identity_residual(BetaIdentity::funceq, p22, k).residual < 1e-7);

  // scaling at kappa = 1 is exact, kappa = 2 within quadrature error
  k = BetaIdentityKnobs{};
  k.kappa = 1.0;
  CHECK(beta_identity_residual(BetaIdentity::scaling, p22, k).residual == 0.0);
  k.kappa = 2.0;
  k.q_grid = {cd(0.4), cd(0.9)};
  CHECK(beta_identity_residual(BetaIdentity::scaling, p22, k).residual < 1e-7);

  // reduction with b_j = 2 a_i
  BarnesBetaParams pred({1.0, 1.0}, 1.0, {2.0, 0.7});
  k = BetaIdentityKnobs{};
  k.period_index = 0;
  k.b_index = 0;
  k.reduction_n = 2;
  k.q_grid = {cd(0.5), cd(1.1)};
  CHECK(beta_identity_residual(BetaIdentity::reduction, pred, k).residual < 1e-7);
  BarnesBetaParams pbad({1.0, 1.0}, 1.0, {1.7, 0.7});
  CHECK_THROWS_AS(beta_identity_residual(BetaIdentity::reduction, pbad, k), domain_error);

  // the four algebra relations
  BarnesBetaParams pal({1.0, 1.5}, 1.0, {0.8, 1.2});
  k = BetaIdentityKnobs{};
  k.period_index = 1;
  k.b_index = 0;
  k.q_grid = {cd(0.5), cd(1.3)};
  for (auto kind : {BetaIdentity::algebra1, BetaIdentity::algebra2, BetaIdentity::algebra3,
                    BetaIdentity::algebra4})
    CHECK(beta_identity_residual(kind, pal, k).residual < 1e-7);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(BarnesBetaParams({1.0}, -1.0, {1.0}), domain_error);
  CHECK_THROWS_AS(BarnesBetaParams({-1.0}, 1.0, {1.0}), domain_error);
  CHECK_THROWS_AS(BarnesBetaParams({1.0}, 1.0, {0.0}), domain_error);
  BarnesBetaParams wide({1.0}, 1.0, {1.0});
  wide.N = 30;  // past the subset cap
  wide.b.assign(30, 1.0);
  CHECK_THROWS_AS(s_operator([](cd) { return cd(1.0); }, cd(0.0), 1.0, wide.b),
                  capacity_error);
}

TEST_CASE("property sweep over random parameter sets") {
  // random (M, N, a, b0, b) draws: transform bounds, symmetry, recursion,
  // and the Shintani route must hold on every admissible set
  RngStream gen(0xBB, 1);
  for (int rep = 0; rep < 12; ++rep) {
    int M = 1 + int(gen.uniform() * 2.0);       // 1..2
    int N = M + int(gen.uniform() * 2.0);       // M..M+1
    std::vector<double> a, b;
    for (int i = 0; i < M; ++i) a.push_back(0.5 + 2.0 * gen.uniform());
    for (int j = 0; j < N; ++j) b.push_back(0.4 + 2.0 * gen.uniform());
    BarnesBetaParams p(a, 0.5 + 1.5 * gen.uniform(), b);

    for (double q : {0.4, 1.7}) {
      double v = eta(p, cd(q)).value.real();
      CHECK(v > 0.0);
      CHECK(v <= 1.0 + 1e-10);
    }
    cd qc(0.9, 0.7);
    CHECK(std::abs(eta(p, std::conj(qc)).value - std::conj(eta(p, qc).value)) < 1e-10);

    // functional equation along a random period
    int i = int(gen.uniform() * M);
    BetaIdentityKnobs k;
    k.period_index = i;
    k.q_grid = {cd(0.3 + gen.uniform())};
    CHECK(beta_identity_residual(BetaIdentity::funceq, p, k).residual < 1e-7);

    // Shintani product reproduces eta
    cd q(0.8);
    CHECK(std::abs(eta_shintani_product(p, q, i).value - eta(p, q).value) < 1e-6);

    // Levy-Khinchine exponent matches
    CHECK(std::abs(std::exp(levy_exponent(p, cd(0.6))) - eta(p, cd(0.6)).value) < 1e-7);
  }
}
