#include <doctest.h>

#include <cmath>
#include <complex>

#include "barnesbeta/multigamma.hpp"
#include "barnesbeta/specfun.hpp"

using namespace barnesbeta;
using cd = std::complex<double>;

namespace {
// L_2(w | 1,1) oracle frozen from Hurwitz-zeta s-derivatives
// (zeta'(-1, w) + (1 - w) zeta'(0, w), 30-digit evaluation).
struct L2Ref {
  double w_re, w_im, v_re, v_im;
};
constexpr L2Ref kL2Ref[] = {
    {1.0, 0.0, -0.165421143700450929, 0.0},
    {1.5, 0.0, 0.227116234466880737, 0.0},
    {0.7, 0.0, -0.226512806586790290, 0.0},
    {2.5, 0.0, 1.266837005306798702, 0.0},
    {1.5, 0.5, 0.169504649851701555, 0.520243257879236747},
};
}  // namespace

TEST_CASE("M = 0 is -log w") {
  GammaParams p{};
  auto v = log_gamma(p, cd(2.0));
  CHECK(v.value.real() == doctest::Approx(-std::log(2.0)).epsilon(1e-15));
  CHECK(v.est_error == 0.0);
  auto vc = log_gamma(p, cd(1.0, 2.0));
  CHECK(vc.value.real() == doctest::Approx(std::real(-std::log(cd(1.0, 2.0)))));
}

TEST_CASE("Gamma_1 quadrature against the closed form") {
  for (double a : {0.5, 1.0, 2.0})
    for (double w : {0.3, 1.0, 2.3, 4.0}) {
      GammaParams p({a});
      cd quad = std::exp(log_gamma(p, cd(w)).value);
      cd closed = gamma1_closed(a, cd(w));
      CHECK(std::abs(quad - closed) <= 1e-9 * std::abs(closed));
    }
  // classical anchor Gamma_1(1|1) = 1/sqrt(2 pi)
  CHECK(std::exp(log_gamma(GammaParams({1.0}), cd(1.0)).value).real() ==
        doctest::Approx(0.3989422804014327).epsilon(1e-10));
  CHECK(log_gamma(GammaParams({1.0}), cd(1.0)).value.real() ==
        doctest::Approx(-0.9189385332046727).epsilon(1e-10));
}

TEST_CASE("gamma1_closed anchors") {
  CHECK(gamma1_closed(1.0, cd(1.0)).real() == doctest::Approx(0.3989422804014327));
  CHECK(gamma1_closed(1.0, cd(2.0)).real() == doctest::Approx(0.3989422804014327));
  CHECK(gamma1_closed(2.0, cd(2.0)).real() ==
        doctest::Approx(0.5641895835477563).epsilon(1e-13));
  CHECK_THROWS_AS(gamma1_closed(1.0, cd(0.0)), pole_error);
}

TEST_CASE("L_2(w|1,1) against the Hurwitz-zeta derivative oracle") {
  GammaParams p({1.0, 1.0});
  for (const auto& ref : kL2Ref) {
    auto v = log_gamma(p, cd(ref.w_re, ref.w_im));
    CHECK(v.value.real() == doctest::Approx(ref.v_re).epsilon(5e-11));
    CHECK(v.value.imag() == doctest::Approx(ref.v_im).epsilon(5e-11));
    CHECK(v.est_error < 1e-8);
  }
}

TEST_CASE("L_3(w|1,1,1) against the Hurwitz-zeta derivative oracle") {
  // the triple sum collapses to (zeta'(-2,w) + (3-2w) zeta'(-1,w) +
  // (w-1)(w-2) zeta'(0,w))/2; frozen 30-digit evaluations
  GammaParams p({1.0, 1.0, 1.0});
  struct Ref {
    double w_re, w_im, v_re, v_im;
  };
  const Ref refs[] = {
      {1.0, 0.0, -0.09793480037942210, 0.0},
      {0.6, 0.0, -0.11926771536600578, 0.0},
      {2.2, 0.0, 0.00455611402702566, 0.0},
      {1.3, 0.7, 0.10422065474746156, 0.32592650606070713},
  };
  for (const auto& r : refs) {
    auto v = log_gamma(p, cd(r.w_re, r.w_im));
    CHECK(v.value.real() == doctest::Approx(r.v_re).epsilon(5e-10));
    CHECK(v.value.imag() == doctest::Approx(r.v_im).epsilon(5e-10));
  }
}

TEST_CASE("L_2 at the window extremes") {
  GammaParams p({1.0, 1.0});
  // small Re(w) stretches the integration window, large w the crossover
  CHECK(log_gamma(p, cd(0.05)).value.real() ==
        doctest::Approx(1.9114243179684961).epsilon(1e-9));
  CHECK(log_gamma(p, cd(12.0)).value.real() ==
        doctest::Approx(-54.122805030344793).epsilon(1e-10));
}

TEST_CASE("large periods and arguments stay bounded-work and consistent") {
  // the subset sums of the theta-kernel parameter sets reach M = 6 with
  // periods up to ~25 and arguments in the hundreds; the recursion in the
  // functional equation is the consistency anchor
  const double h = 0.5 * M_PI * M_PI;
  GammaParams p4({h, h, 3 * h, 3 * h});
  GammaParams hat({h, 3 * h, 3 * h});
  for (double w : {0.8, 11.0}) {
    cd lhs = log_gamma(p4, cd(w)).value;
    cd rhs = log_gamma(hat, cd(w)).value + log_gamma(p4, cd(w + h)).value;
    CHECK(std::abs(lhs - rhs) < 1e-10);
  }
  GammaParams p6({h, h, 3 * h, 3 * h, 5 * h, 5 * h});
  auto big = log_gamma(p6, cd(120.0));
  CHECK(std::isfinite(big.value.real()));
  CHECK(big.est_error < 1e-9);
  cd lhs6 = log_gamma(p6, cd(119.0)).value;
  GammaParams hat6({h, 3 * h, 3 * h, 5 * h, 5 * h});
  cd rhs6 = log_gamma(hat6, cd(119.0)).value + log_gamma(p6, cd(119.0 + h)).value;
  CHECK(std::abs(lhs6 - rhs6) < 1e-8);
}

TEST_CASE("complex conjugate symmetry of L_M") {
  GammaParams p({1.0, 2.0});
  cd w(1.3, 0.8);
  auto v = log_gamma(p, w).value;
  auto vc = log_gamma(p, std::conj(w)).value;
  CHECK(vc.real() == doctest::Approx(v.real()).epsilon(1e-12));
  CHECK(vc.imag() == doctest::Approx(-v.imag()).epsilon(1e-12));
}

TEST_CASE("functional equation reconstructs Gamma_2") {
  GammaParams p2({1.0, 1.0});
  GammaParams p1({1.0});
  cd w(1.0);
  cd lhs = log_gamma(p2, w).value;
  cd rhs = log_gamma(p1, w).value + log_gamma(p2, w + 1.0).value;
  CHECK(std::abs(lhs - rhs) < 1e-9);
}

TEST_CASE("domain and accuracy errors") {
  GammaParams p({1.0});
  CHECK_THROWS_AS(log_gamma(p, cd(-1.0)), domain_error);
  CHECK_THROWS_AS(log_gamma(p, cd(0.0)), domain_error);
  QuadratureConfig bad;
  bad.abs_tol = -1.0;
  CHECK_THROWS_AS(log_gamma(p, cd(1.0), bad), domain_error);
}

TEST_CASE("barnes G basic values") {
  CHECK(barnes_g(cd(1.0)).real() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(barnes_g(cd(2.0)).real() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(barnes_g(cd(3.0)).real() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(barnes_g(cd(4.0)).real() == doctest::Approx(2.0).epsilon(1e-9));
  // frozen reference values
  CHECK(barnes_g(cd(0.5)).real() == doctest::Approx(0.6032442812094462).epsilon(1e-9));
  CHECK(barnes_g(cd(1.5)).real() == doctest::Approx(1.0692226492664129).epsilon(1e-9));
  CHECK(barnes_g(cd(3.7)).real() == doctest::Approx(1.4700408737918202).epsilon(1e-9));
  // recursion at a non-integer point
  cd z(1.3, 0.0);
  CHECK(barnes_g(z + 1.0).real() ==
        doctest::Approx((gamma_euler(z) * barnes_g(z)).real()).epsilon(1e-9));
  CHECK_THROWS_AS(barnes_g(cd(-1.0)), domain_error);
}

TEST_CASE("zeta_direct box sum with tail") {
  GammaParams p0{};
  CHECK(zeta_direct(p0, cd(2.7), cd(3.0), 100).real() ==
        doctest::Approx(std::pow(3.0, -2.7)).epsilon(1e-14));

  GammaParams p1({1.0});
  CHECK(zeta_direct(p1, cd(3.0), cd(1.0), 200).real() ==
        doctest::Approx(1.2020569031595943).epsilon(1e-11));

  // sum over k1 + k2 = j collapses to zeta(3) for s = 4, w = 1, a = (1,1)
  GammaParams p2({1.0, 1.0});
  CHECK(zeta_direct(p2, cd(4.0), cd(1.0), 150).real() ==
        doctest::Approx(1.2020569031595943).epsilon(1e-10));

  // Hurwitz scaling: zeta_1(s, w | a) = a^{-s} zeta_H(s, w/a)
  double lhs = zeta_direct(GammaParams({2.0}), cd(3.5), cd(1.4), 200).real();
  double rhs = std::pow(2.0, -3.5) * zeta_direct(p1, cd(3.5), cd(0.7), 200).real();
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));

  CHECK_THROWS_AS(zeta_direct(p1, cd(1.5), cd(1.0), 100), domain_error);
  CHECK_THROWS_AS(zeta_direct(p1, cd(3.0), cd(1.0), 5), domain_error);
}

TEST_CASE("log_multi_gamma dispatch and cache") {
  // M = 1 goes through the closed form
  GammaParams p1({1.5});
  cd w(1.2, 0.3);
  CHECK(std::abs(log_multi_gamma(p1, w).value - log_gamma1_closed(1.5, w)) < 1e-14);
  // M = 2 cached quadrature: second call must agree exactly
  GammaParams p2({1.0, 2.0});
  auto v1 = log_multi_gamma(p2, cd(1.7)).value;
  auto v2 = log_multi_gamma(p2, cd(1.7)).value;
  CHECK(v1 == v2);
}
