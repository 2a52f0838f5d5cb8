#include "barnesbeta/checks.hpp"

#include <cmath>
#include <complex>

#include "barnesbeta/errors.hpp"
#include "barnesbeta/identities.hpp"
#include "barnesbeta/mellin.hpp"
#include "barnesbeta/multigamma.hpp"
#include "barnesbeta/sampling.hpp"
#include "barnesbeta/selberg.hpp"
#include "barnesbeta/specfun.hpp"
#include "barnesbeta/xi.hpp"

namespace barnesbeta {

namespace {

using cd = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

// frozen oracle values (50-digit evaluations of the finite gamma products)
constexpr double kSelbergNegMom1 = 19.723479563785297835;   // tau=3/2, lambda=0, l=1
constexpr double kSelbergNegMom2 = 4062.3874574792352125;   // tau=3/2, lambda=0, l=2

struct Suite {
  std::vector<CheckRecord> records;
  double tol_override = 0.0;

  void add(const std::string& name, const std::string& ref, double lhs, double rhs,
           double residual, double threshold) {
    if (tol_override > 0.0) threshold = tol_override;
    records.push_back({name, ref, lhs, rhs, residual, threshold, residual < threshold});
  }
  void add_rel(const std::string& name, const std::string& ref, double lhs, double rhs,
               double threshold) {
    double scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
    add(name, ref, lhs, rhs, std::abs(lhs - rhs) / scale, threshold);
  }
};

double rel(cd lhs, cd rhs) {
  double scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
  return std::abs(lhs - rhs) / scale;
}

void suite_gamma(Suite& s, const ChecksConfig&) {
  // Gamma_1: integral route against the closed form on a 3x3 grid
  {
    double worst = 0.0;
    for (double a : {0.5, 1.0, 2.0})
      for (double w : {0.7, 1.0, 2.3}) {
        cd quad = std::exp(log_gamma(GammaParams({a}), cd(w)).value);
        worst = std::max(worst, rel(quad, gamma1_closed(a, cd(w))));
      }
    s.add("c01_gamma1_closed_form", "Gamma_1 closed form vs Malmsten integral", worst, 0.0,
          worst, 1e-8);
  }
  // functional equation for M = 1, 2, 3
  {
    double worst = 0.0;
    std::vector<GammaParams> cases = {GammaParams({1.0}), GammaParams({1.0, 2.0}),
                                      GammaParams({1.0, 1.3, 2.1})};
    for (const auto& p : cases)
      for (int i = 0; i < p.M; ++i) {
        IdentityKnobs k;
        k.period_index = i;
        k.w_grid = {cd(0.4), cd(1.1), cd(2.3), cd(4.2, 0.7)};
        worst = std::max(worst, identity_residual(IdentityKind::functional_eq, p, k).residual);
      }
    s.add("c02_functional_equation", "Gamma_M recursion over each period", worst, 0.0, worst,
          1e-8);
  }
  // scaling and multiplication
  {
    double worst = 0.0;
    {
      IdentityKnobs k;
      k.kappa = 1.0;
      double r0 =
          identity_residual(IdentityKind::scaling, GammaParams({1.0}), k).residual;
      s.add("c03_scaling_kappa1", "scaling identity at kappa = 1 (exact)", r0, 0.0, r0, 1e-15);
      k.kappa = 2.0;
      k.w_grid = {cd(0.6), cd(1.5), cd(2.4)};
      worst = std::max(worst,
                       identity_residual(IdentityKind::scaling, GammaParams({1.0, 2.0}), k)
                           .residual);
      k.kappa = 0.7;
      worst = std::max(
          worst, identity_residual(IdentityKind::scaling, GammaParams({1.0}), k).residual);
    }
    {
      IdentityKnobs k;
      k.w_grid = {cd(0.7), cd(1.0), cd(1.8)};
      for (int km : {2, 3}) {
        k.k_mult = km;
        worst = std::max(
            worst,
            identity_residual(IdentityKind::multiplication, GammaParams({1.0, 1.0}), k).residual);
        worst = std::max(
            worst,
            identity_residual(IdentityKind::multiplication, GammaParams({1.5}), k).residual);
      }
    }
    s.add("c03_scaling_multiplication", "scaling and multiplication identities", worst, 0.0,
          worst, 1e-7);
  }
  // Shintani step M = 1 -> 2
  {
    IdentityKnobs k;
    k.x_anchor = 1.0;
    k.a_next = 1.0;
    k.w_grid = {cd(0.5), cd(1.3), cd(2.2)};
    double r = identity_residual(IdentityKind::shintani_gamma, GammaParams({1.0}), k).residual;
    s.add("c04_shintani_step", "Gamma_2 from the Gamma_1 product with psi/phi corrections", r,
          0.0, r, 1e-5);
  }
  // Bernoulli engine
  {
    GammaParams p2({1.0, 1.0});
    double worst = 0.0;
    for (double x : {0.0, 0.7, 2.5}) {
      double closed = x * x - 2.0 * x + 5.0 / 6.0;
      worst = std::max(worst, std::abs(bernoulli_poly(p2, 2, x) - closed));
    }
    for (double a1 : {1.0, 2.0})
      for (double a2 : {1.0, 0.5}) {
        GammaParams p({a1, a2});
        for (double x : {0.3, 1.7}) {
          double closed = x * x / (a1 * a2) - x * (a1 + a2) / (a1 * a2) +
                          (a1 * a1 + 3.0 * a1 * a2 + a2 * a2) / (6.0 * a1 * a2);
          worst = std::max(worst, std::abs(bernoulli_poly(p, 2, x) - closed));
        }
      }
    s.add("c14_bernoulli_quadratic", "degree-2 Bernoulli polynomial closed form", worst, 0.0,
          worst, 1e-12);

    // binomial shift, m <= 4
    double worst2 = 0.0;
    GammaParams p({1.0, 2.0});
    RngStream rng(17, 3);
    for (int rep = 0; rep < 6; ++rep) {
      double x = 0.2 + 2.0 * rng.uniform(), y = 0.1 + 1.5 * rng.uniform();
      for (int m = 0; m <= 4; ++m) {
        double lhs = bernoulli_poly(p, m, x + y);
        double rhs = 0.0;
        for (int q = 0; q <= m; ++q)
          rhs += binomial(m, q) * bernoulli_poly(p, q, x) * std::pow(-y, m - q);
        worst2 = std::max(worst2, std::abs(lhs - rhs));
      }
    }
    // multiplication sum, M <= 2, k <= 3, m <= 3
    for (int M = 1; M <= 2; ++M) {
      GammaParams pm(M == 1 ? std::vector<double>{1.5} : std::vector<double>{1.0, 2.0});
      for (int k = 1; k <= 3; ++k)
        for (int m = 0; m <= 3; ++m) {
          double w = 0.8;
          double rhs = std::pow(double(k), M - m) * bernoulli_poly(pm, m, double(k) * w);
          double lhs = 0.0;
          std::vector<int> idx(size_t(M), 0);
          while (true) {
            double off = 0.0;
            for (int j = 0; j < M; ++j) off += idx[size_t(j)] * pm.a[size_t(j)];
            lhs += bernoulli_poly(pm, m, w + off / k);
            int j = 0;
            while (j < M && ++idx[size_t(j)] >= k) idx[size_t(j++)] = 0;
            if (j == M) break;
          }
          worst2 = std::max(worst2, std::abs(lhs - rhs));
        }
    }
    s.add("c14_bernoulli_identities", "binomial shift and multiplication sums", worst2, 0.0,
          worst2, 1e-10);
  }
}

void suite_beta(Suite& s, const ChecksConfig&) {
  std::vector<BarnesBetaParams> set = {
      BarnesBetaParams({1.0}, 1.0, {1.0}),
      BarnesBetaParams({1.0}, 1.0, {1.0, 2.0}),
      BarnesBetaParams({1.0, 2.0}, 1.0, {1.0, 1.0}),
  };
  // eta vs the explicit Gamma_2 ratio at the M=N=2 worked example
  {
    const BarnesBetaParams& p = set[2];
    cd q(1.0);
    GammaParams g2({1.0, 2.0});
    auto L = [&](double w) { return log_multi_gamma(g2, cd(w)).value; };
    cd ratio = std::exp(L(q.real() + p.b0) - L(p.b0) + L(p.b0 + p.b[0]) -
                        L(q.real() + p.b0 + p.b[0]) + L(p.b0 + p.b[1]) -
                        L(q.real() + p.b0 + p.b[1]) + L(q.real() + p.b0 + p.b[0] + p.b[1]) -
                        L(p.b0 + p.b[0] + p.b[1]));
    double r = rel(eta(p, q).value, ratio);
    s.add("c05_eta_direct_gamma_ratio", "eta as the four-Gamma_2 ratio", r, 0.0, r, 1e-8);
  }
  {
    double worst_sh = 0.0, worst_ba = 0.0;
    for (const auto& p : set) {
      for (double q : {0.5, 1.0}) {
        cd direct = eta(p, cd(q)).value;
        worst_sh = std::max(worst_sh,
                            rel(direct, eta_shintani_product(p, cd(q), p.M - 1).value));
        worst_ba = std::max(worst_ba,
                            rel(direct, eta_barnes_product(p, cd(q), 10000).extrapolated));
      }
    }
    s.add("c05_eta_shintani", "eta vs its Shintani factorization", worst_sh, 0.0, worst_sh,
          1e-5);
    s.add("c05_eta_barnes", "eta vs its lattice factorization", worst_ba, 0.0, worst_ba, 1e-4);
  }
  // mass at 1: anchors and three-way agreement
  {
    BarnesBetaParams p01({}, 1.0, {1.0});
    BarnesBetaParams p02({}, 1.0, {1.0, 1.0});
    BarnesBetaParams p12({1.0}, 1.0, {1.0, 2.0});
    double worst_anchor = 0.0;
    for (auto m : {MassMethod::quadrature, MassMethod::sn_formula, MassMethod::product}) {
      worst_anchor = std::max(worst_anchor, std::abs(mass_at_one(p01, m) - 0.5));
      worst_anchor = std::max(worst_anchor, std::abs(mass_at_one(p02, m) - 0.75));
    }
    s.add("c06_mass_anchors", "closed-form atom masses 1/2 and 3/4", worst_anchor, 0.0,
          worst_anchor, 1e-10);
    double q12 = mass_at_one(p12, MassMethod::quadrature);
    double s12 = mass_at_one(p12, MassMethod::sn_formula);
    double pr12 = mass_at_one(p12, MassMethod::product);
    double spread = std::max({std::abs(q12 - s12), std::abs(q12 - pr12), std::abs(s12 - pr12)});
    s.add("c06_mass_threeway", "atom mass by integral, subset sum, lattice product", q12, s12,
          spread, 1e-6);
  }
  // Levy-Khinchine consistency
  {
    double worst = 0.0;
    BarnesBetaParams p01({}, 1.0, {1.0});
    BarnesBetaParams p12({1.0}, 1.0, {1.0, 2.0});
    for (const auto& p : {p01, p12})
      for (double q : {-0.5, 0.3, 0.9})
        worst = std::max(worst, rel(std::exp(levy_exponent(p, cd(q))), eta(p, cd(q)).value));
    s.add("c07_levy_khinchine", "exp of the Levy exponent vs eta", worst, 0.0, worst, 1e-7);
  }
}

void suite_selberg(Suite& s, const ChecksConfig& cfg) {
  SelbergParams p{1.5, 0.0, 0.0};
  {
    double m1 = selberg_mellin(p, cd(1.0)).real();
    s.add_rel("c08_moment_plus1", "first positive moment at lambda = 0", m1, 1.0, 1e-8);
    double f1 = selberg_moment(p, 1, -1);
    double f2 = selberg_moment(p, 2, -1);
    s.add_rel("c08_moment_product_l1", "negative moment product, l = 1", f1, kSelbergNegMom1,
              1e-8);
    s.add_rel("c08_moment_product_l2", "negative moment product, l = 2", f2, kSelbergNegMom2,
              1e-8);
    s.add_rel("c08_mellin_neg1", "transform at q = -1 vs the product",
              selberg_mellin(p, cd(-1.0)).real(), kSelbergNegMom1, 1e-8);
    s.add_rel("c08_mellin_neg2", "transform at q = -2 vs the product",
              selberg_mellin(p, cd(-2.0)).real(), kSelbergNegMom2, 1e-8);
  }
  // Monte-Carlo negative moment, 20 seeded replications
  {
    std::uint64_t n = cfg.quick ? 20000 : 1000000;
    SelbergSampler sampler(p);
    int passes = 0;
    double last_mean = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
      auto value = [&](RngStream& rng) { return 1.0 / sampler.draw(rng); };
      SampleStats st = mc_parallel(value, n, cfg.seed, 1000 + 16ull * std::uint64_t(rep));
      last_mean = st.mean;
      if (std::abs(st.mean - kSelbergNegMom1) < 3.0 * st.stderr_mean()) ++passes;
    }
    s.add("c09_mc_neg_moment", "Monte-Carlo E[1/M] replication score", last_mean,
          kSelbergNegMom1, 20.0 - passes, 2.5);
  }
  // involution
  {
    SelbergIdentityKnobs k;
    k.q_grid = {0.15, 0.3, 0.45, 0.6};
    SelbergParams p2{2.0, 0.1, 0.1};
    double r = selberg_identity_residual(SelbergIdentity::involution, p2, k).residual;
    s.add("c12_involution", "factor-level and reduced-transform involution", r, 0.0, r, 1e-7);
    SelbergParams p1{1.0, 0.1, 0.1};
    double r1 = selberg_identity_residual(SelbergIdentity::involution, p1, k).residual;
    s.add("c12_involution_fixed_point", "involution at the tau = 1 fixed point", r1, 0.0, r1,
          1e-14);
  }
}

void suite_critical(Suite& s, const ChecksConfig& cfg) {
  {
    double m1 = critical_mellin(cd(-1.0)).real();
    double m2 = critical_mellin(cd(-2.0)).real();
    s.add_rel("c10_mellin_neg1", "Barnes-G ratio at q = -1", m1, 24.0, 1e-6);
    s.add_rel("c10_mellin_neg2", "Barnes-G ratio at q = -2", m2, 21600.0, 1e-6);
  }
  {
    std::uint64_t n = cfg.quick ? 20000 : 1000000;
    CriticalSampler sampler;
    auto value = [&](RngStream& rng) { return 1.0 / sampler.draw(rng); };
    SampleStats st = mc_parallel(value, n, cfg.seed, 3000);
    double resid = std::abs(st.mean - 24.0) / std::max(st.stderr_mean(), 1e-300);
    s.add("c10_mc_neg_moment", "Monte-Carlo E[1/M_c] in stderr units", st.mean, 24.0, resid,
          3.0);
  }
  // cumulant bridge
  {
    double worst = 0.0;
    for (double delta : {0.4, 0.5, 0.6}) {
      auto f = [&](double q) { return beta22_delta_log_mellin_levy(delta, q); };
      for (int n = 2; n <= 3; ++n) {
        double series = beta22_delta_cumulant(n, delta);
        auto deriv = [&](double h) {
          if (n == 2) return (f(h) - 2.0 * f(0.0) + f(-h)) / (h * h);
          return (f(2.0 * h) - 2.0 * f(h) + 2.0 * f(-h) - f(-2.0 * h)) / (2.0 * h * h * h);
        };
        double h = 1e-2;
        double d1 = deriv(h), d2 = deriv(0.5 * h);
        double extrap = (4.0 * d2 - d1) / 3.0;  // Richardson on the h^2 error
        double numeric = (n % 2 == 0 ? 1.0 : -1.0) * extrap;
        worst = std::max(worst, std::abs(series - numeric));
      }
    }
    s.add("c11_cumulant_bridge", "xi-series cumulants vs transform derivatives", worst, 0.0,
          worst, 1e-4);
  }
}

void suite_xi(Suite& s, const ChecksConfig& cfg) {
  s.add_rel("c13_xi_at_2", "xi(2) = pi/6", riemann_xi(2.0), kPi / 6.0, 1e-10);
  {
    double gap = std::abs(theta_trunc(1.0, 10) - theta(1.0));
    s.add("c13_theta_product", "triple-product truncation against the series", theta_trunc(1.0, 10),
          theta(1.0), gap, 1e-8);
  }
  {
    double closed = s2_delta_transform(S2Transform::laplace_closed, 1.0, 0.5);
    double levy = s2_delta_transform(S2Transform::laplace_levy, 1.0, 0.5);
    s.add_rel("c13_s2_laplace", "sinh closed form vs theta-kernel integral", closed, levy, 1e-6);
  }
  {
    std::uint64_t n = cfg.quick ? 20000 : 1000000;
    TDeltaParams tp;
    tp.n_terms = 2000;
    double worst = 0.0;
    for (int q : {1, 2}) {
      auto rep = t_delta_functional_residual(q, 0.1, tp, n, cfg.seed, 7000 + 100ull * q);
      worst = std::max(worst, rep.residual_in_stderr);
    }
    s.add("c13_t_delta_funceq", "T(delta) functional equation in stderr units", worst, 0.0,
          worst, 3.0);
  }
  {
    // delta -> 0 extrapolation of E[T^1] - (1/delta) toward 2 xi(2) (2/pi) = 2/3
    std::uint64_t n = cfg.quick ? 20000 : 200000;
    TDeltaParams tp;
    tp.n_terms = 2000;
    double v[3], se[3], deltas[3] = {0.2, 0.1, 0.05};
    for (int i = 0; i < 3; ++i) {
      tp.delta = deltas[i];
      TDeltaSampler sampler(tp);
      double ratio = 1.0 / deltas[i];
      auto value = [&](RngStream& rng) { return sampler.draw(rng) - ratio; };
      SampleStats st = mc_parallel(value, n, cfg.seed, 8000 + 16ull * std::uint64_t(i));
      v[i] = st.mean;
      se[i] = st.stderr_mean();
    }
    // every sequence point has the exact value sum 2/(pi^2 n^2/2 + delta)
    double seq_worst = 0.0;
    for (int i = 0; i < 3; ++i)
      seq_worst = std::max(seq_worst, std::abs(v[i] - s2_delta_mean(deltas[i])) /
                                          std::max(se[i], 1e-300));
    s.add("c13_delta_sequence", "shifted moments along the delta sequence", v[0],
          s2_delta_mean(deltas[0]), seq_worst, 3.5);
    double extrap = 2.0 * v[2] - v[1];  // linear in delta through the last two points
    double se_extrap = std::sqrt(4.0 * se[2] * se[2] + se[1] * se[1]);
    double resid = std::abs(extrap - 2.0 / 3.0) / std::max(se_extrap, 1e-300);
    s.add("c13_delta_zero_limit", "delta -> 0 limit of the shifted first moment", extrap,
          2.0 / 3.0, resid, 3.0);
  }
}

}  // namespace

std::vector<std::string> suite_names() { return {"gamma", "beta", "selberg", "critical", "xi"}; }

std::vector<CheckRecord> run_suite(const std::string& suite, const ChecksConfig& cfg) {
  Suite s;
  s.tol_override = cfg.tol_override;
  if (suite == "gamma") suite_gamma(s, cfg);
  else if (suite == "beta") suite_beta(s, cfg);
  else if (suite == "selberg") suite_selberg(s, cfg);
  else if (suite == "critical") suite_critical(s, cfg);
  else if (suite == "xi") suite_xi(s, cfg);
  else if (suite == "all") {
    for (const auto& name : suite_names()) {
      auto part = run_suite(name, cfg);
      s.records.insert(s.records.end(), part.begin(), part.end());
    }
  } else {
    throw domain_error("run_suite: unknown suite '" + suite + "'");
  }
  return s.records;
}

}  // namespace barnesbeta
