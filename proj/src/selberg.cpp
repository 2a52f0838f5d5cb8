#include "barnesbeta/selberg.hpp"

#include <cmath>
#include <sstream>

#include "barnesbeta/errors.hpp"
#include "barnesbeta/specfun.hpp"
#include "barnesbeta/xi.hpp"

namespace barnesbeta {

namespace {

using cd = std::complex<double>;

constexpr double kLogTwoPi = 1.8378770664093454836;
constexpr double kLog2 = 0.6931471805599453094;

cd lg2(double a1, double a2, cd w, const QuadratureConfig& cfg) {
  if (!(w.real() > 0.0))
    throw domain_error("selberg: Gamma_2 argument left of the imaginary axis");
  return log_multi_gamma(GammaParams({a1, a2}), w, cfg).value;
}

double rel_gap(cd lhs, cd rhs) {
  double scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
  return std::abs(lhs - rhs) / scale;
}

}  // namespace

void MasterParams::validate() const {
  if (!(a1 > 0.0 && a2 > 0.0 && x1 > 0.0 && x2 > 0.0))
    throw domain_error("MasterParams: all parameters must be positive");
}

void SelbergParams::validate() const {
  if (!(tau > 0.0)) throw domain_error("SelbergParams: tau must be positive");
  if (!(lambda1 > -1.0 / tau) || !(lambda2 > -1.0 / tau))
    throw domain_error("SelbergParams: requires lambda_i > -1/tau");
}

MasterFactors master_factors(const MasterParams& p) {
  p.validate();
  MasterFactors f;
  f.log_const = -(2.0 * (p.x1 + p.x2) - (p.a1 + p.a2)) / (p.a1 * p.a2) * kLog2;
  f.sigma2 = 4.0 * kLog2 / (p.a1 * p.a2);
  double bx1 = 0.5 * (p.x2 - p.x1);
  if (std::abs(bx1) > 1e-14) {
    if (bx1 < 0.0) throw domain_error("master_factors: requires x2 >= x1");
    f.x1 = BarnesBetaParams({p.a1, p.a2}, p.x1, {bx1, bx1});
  }
  f.x2 = BarnesBetaParams({p.a1, p.a2}, 0.5 * (p.x1 + p.x2), {0.5 * p.a1, 0.5 * p.a2});
  double bx3 = 0.5 * (p.x1 + p.x2 - p.a1 - p.a2);
  if (!(bx3 > 0.0)) throw domain_error("master_factors: requires x1 + x2 > a1 + a2");
  f.x3 = BarnesBetaParams({p.a1, p.a2}, p.a1 + p.a2, {bx3, bx3});
  return f;
}

cd master_mellin(const MasterParams& p, cd q, const QuadratureConfig& cfg) {
  p.validate();
  const double s = p.x1 + p.x2;
  for (double arg : {p.x1 - q.real(), p.x2 - q.real(), p.a1 + p.a2 - q.real(),
                     s - 2.0 * q.real()})
    if (!(arg > 0.0)) throw domain_error("master_mellin: q outside the Gamma_2 domain");
  cd lhs = lg2(p.a1, p.a2, p.x1 - q, cfg) - lg2(p.a1, p.a2, cd(p.x1), cfg);
  lhs += lg2(p.a1, p.a2, p.x2 - q, cfg) - lg2(p.a1, p.a2, cd(p.x2), cfg);
  lhs += lg2(p.a1, p.a2, p.a1 + p.a2 - q, cfg) - lg2(p.a1, p.a2, cd(p.a1 + p.a2), cfg);
  lhs += lg2(p.a1, p.a2, s - q, cfg) - lg2(p.a1, p.a2, s - 2.0 * q, cfg);
  return std::exp(lhs);
}

cd master_mellin_factored(const MasterParams& p, cd q, const QuadratureConfig& cfg) {
  MasterFactors f = master_factors(p);
  cd lg = f.log_const * q + 0.5 * f.sigma2 * q * q;  // constant^q E[L^q]
  for (const auto& x : {f.x1, f.x2, f.x3}) {
    if (!x) continue;
    LogGammaValue sq = s_log_gamma(*x, -q, cfg), s0 = s_log_gamma(*x, 0.0, cfg);
    lg += sq.value - s0.value;  // E[beta^{-q}]
  }
  return std::exp(lg);
}

namespace {

// log of the Gamma_2 ratio block shared by the full and reduced transforms
cd selberg_log_ratio_block(const SelbergParams& p, cd q, const QuadratureConfig& cfg) {
  const double tau = p.tau;
  double x1 = 1.0 + tau * (1.0 + p.lambda1);
  double x2 = 1.0 + tau * (1.0 + p.lambda2);
  double x12 = 2.0 + tau * (2.0 + p.lambda1 + p.lambda2);
  cd lg = lg2(1.0, tau, x1 - q, cfg) - lg2(1.0, tau, cd(x1), cfg);
  lg += lg2(1.0, tau, x2 - q, cfg) - lg2(1.0, tau, cd(x2), cfg);
  lg += lg2(1.0, tau, tau - q, cfg) - lg2(1.0, tau, cd(tau), cfg);
  lg += lg2(1.0, tau, x12 - q, cfg) - lg2(1.0, tau, x12 - 2.0 * q, cfg);
  return lg;
}

// Mellin transform of the reduced distribution Gamma(1-1/tau)/(2 pi) * M;
// the (2 pi)^q Gamma^{-q} prefactors cancel, leaving tau^{q/tau} times the
// ratio block. Defined for every tau > 0.
cd selberg_mellin_reduced(const SelbergParams& p, cd q, const QuadratureConfig& cfg) {
  p.validate();
  if (!(q.real() < p.tau)) throw domain_error("selberg_mellin_reduced: requires Re(q) < tau");
  return std::exp(q / p.tau * std::log(p.tau) + selberg_log_ratio_block(p, q, cfg));
}

}  // namespace

cd selberg_mellin(const SelbergParams& p, cd q, const QuadratureConfig& cfg) {
  p.validate();
  if (!(p.tau > 1.0)) throw domain_error("selberg_mellin: distribution requires tau > 1");
  if (!(q.real() < p.tau)) throw domain_error("selberg_mellin: requires Re(q) < tau");
  const double tau = p.tau;
  cd lg = q / tau * std::log(tau) + q * kLogTwoPi -
          q * log_gamma_euler(cd(1.0 - 1.0 / tau));
  lg += selberg_log_ratio_block(p, q, cfg);
  return std::exp(lg);
}

double selberg_moment(const SelbergParams& p, int l, int sign) {
  p.validate();
  if (!(p.tau > 1.0)) throw domain_error("selberg_moment: requires tau > 1");
  if (l < 1) throw domain_error("selberg_moment: l must be a positive integer");
  const double tau = p.tau, l1 = p.lambda1, l2 = p.lambda2;
  double lg = 0.0;
  if (sign > 0) {
    if (!(double(l) < tau)) throw domain_error("selberg_moment: positive moments need l < tau");
    for (int k = 0; k < l; ++k) {
      lg += std::lgamma(1.0 - (k + 1) / tau) - std::lgamma(1.0 - 1.0 / tau);
      lg += std::lgamma(1.0 + l1 - k / tau) + std::lgamma(1.0 + l2 - k / tau);
      lg -= std::lgamma(2.0 + l1 + l2 - (l + k - 1) / tau);
    }
  } else {
    for (int k = 0; k < l; ++k) {
      lg += std::lgamma(2.0 + l1 + l2 + (l + 2 + k) / tau) + std::lgamma(1.0 - 1.0 / tau);
      lg -= std::lgamma(1.0 + l1 + (k + 1) / tau) + std::lgamma(1.0 + l2 + (k + 1) / tau) +
            std::lgamma(1.0 + k / tau);
    }
  }
  return std::exp(lg);
}

SelbergSampler::SelbergSampler(const SelbergParams& p, int K, const QuadratureConfig& cfg)
    : p_(p) {
  p.validate();
  if (!(p.tau > 1.0)) throw domain_error("SelbergSampler: requires tau > 1");
  MasterParams mp{1.0, p.tau, 1.0 + p.tau * (1.0 + p.lambda1), 1.0 + p.tau * (1.0 + p.lambda2)};
  if (mp.x2 < mp.x1) std::swap(mp.x1, mp.x2);  // symmetric in (lambda1, lambda2)
  MasterFactors f = master_factors(mp);
  sigma2_ = f.sigma2;
  log_const_ = std::log(2.0 * 3.14159265358979323846) -
               (3.0 * (1.0 + p.tau) + 2.0 * p.tau * (p.lambda1 + p.lambda2)) / p.tau * kLog2 -
               std::lgamma(1.0 - 1.0 / p.tau);
  if (f.x1) x1_.emplace(*f.x1, -1, K, true, cfg);
  if (f.x2) x2_.emplace(*f.x2, -1, K, true, cfg);
  if (f.x3) x3_.emplace(*f.x3, -1, K, true, cfg);
}

double SelbergSampler::draw(RngStream& rng) const {
  double logv = log_const_ + std::sqrt(sigma2_) * rng.normal();
  if (x1_) logv -= std::log(x1_->draw(rng));
  if (x2_) logv -= std::log(x2_->draw(rng));
  if (x3_) logv -= std::log(x3_->draw(rng));
  // Frechet factor Y(tau)
  logv += -std::log(rng.exponential()) / p_.tau;
  return std::exp(logv);
}

std::vector<double> selberg_sample(const SelbergParams& p, RngStream& rng, std::size_t n,
                                   int K) {
  SelbergSampler s(p, K);
  std::vector<double> out(n);
  for (auto& v : out) v = s.draw(rng);
  return out;
}

std::string to_string(SelbergIdentity k) {
  switch (k) {
    case SelbergIdentity::infinite_product: return "infinite_product";
    case SelbergIdentity::funceq_tau: return "funceq_tau";
    case SelbergIdentity::funceq_one: return "funceq_one";
    case SelbergIdentity::involution: return "involution";
  }
  return "?";
}

SelbergIdentityReport selberg_identity_residual(SelbergIdentity kind, const SelbergParams& p,
                                                const SelbergIdentityKnobs& knobs,
                                                const QuadratureConfig& cfg) {
  SelbergIdentityReport rep{kind, 0.0, 0, ""};
  std::ostringstream echo;
  echo << "tau=" << p.tau << " lambda=(" << p.lambda1 << "," << p.lambda2 << ")";
  rep.params_echo = echo.str();
  std::vector<double> grid = knobs.q_grid;
  if (grid.empty()) grid = {0.2, 0.4, 0.6, -0.5};
  const double tau = p.tau, l1 = p.lambda1, l2 = p.lambda2;

  auto tally = [&](cd lhs, cd rhs) {
    rep.residual = std::max(rep.residual, rel_gap(lhs, rhs));
    ++rep.points_tested;
  };

  switch (kind) {
    case SelbergIdentity::infinite_product: {
      for (double q : grid) {
        cd direct = selberg_mellin(p, cd(q), cfg);
        double lg = q * std::log(tau) + std::lgamma(1.0 - q / tau) -
                    q * std::lgamma(1.0 - 1.0 / tau);
        lg += std::lgamma(2.0 - 2.0 * q + tau * (1.0 + l1 + l2)) -
              std::lgamma(2.0 - q + tau * (1.0 + l1 + l2));
        auto logterm = [&](int m) {
          double mt = m * tau;
          double v = 2.0 * q * std::log(mt);
          v += std::lgamma(1.0 - q + mt) - std::lgamma(1.0 + mt);
          v += std::lgamma(1.0 - q + tau * l1 + mt) - std::lgamma(1.0 + tau * l1 + mt);
          v += std::lgamma(1.0 - q + tau * l2 + mt) - std::lgamma(1.0 + tau * l2 + mt);
          v += std::lgamma(2.0 - q + tau * (l1 + l2) + mt) -
               std::lgamma(2.0 - 2.0 * q + tau * (l1 + l2) + mt);
          return v;
        };
        double sum = 0.0;
        for (int m = 1; m <= knobs.product_m_max; ++m) sum += logterm(m);
        double half = 0.0;
        for (int m = 1; m <= knobs.product_m_max / 2; ++m) half += logterm(m);
        double extrap = 2.0 * sum - half;  // ~c/m tail of the partial sums
        tally(direct, std::exp(lg + extrap));
      }
      break;
    }
    case SelbergIdentity::funceq_tau: {
      for (double q : grid) {
        cd lhs = selberg_mellin(p, cd(q), cfg);
        cd rhs = selberg_mellin(p, cd(q - tau), cfg) * tau *
                 std::pow(2.0 * 3.14159265358979323846, tau - 1.0) *
                 std::exp(-tau * std::lgamma(1.0 - 1.0 / tau) + std::lgamma(tau - q) +
                          std::lgamma((1.0 + l1) * tau - (q - 1.0)) +
                          std::lgamma((1.0 + l2) * tau - (q - 1.0)) -
                          std::lgamma((2.0 + l1 + l2) * tau - (2.0 * q - 2.0)) +
                          std::lgamma((2.0 + l1 + l2) * tau - (q - 2.0)) -
                          std::lgamma((3.0 + l1 + l2) * tau - (2.0 * q - 2.0)));
        tally(lhs, rhs);
      }
      break;
    }
    case SelbergIdentity::funceq_one: {
      for (double q : grid) {
        cd lhs = selberg_mellin(p, cd(q), cfg);
        cd rhs = selberg_mellin(p, cd(q - 1.0), cfg) *
                 std::exp(std::lgamma(1.0 - q / tau) - std::lgamma(1.0 - 1.0 / tau) +
                          std::lgamma(2.0 + l1 + l2 - (q - 2.0) / tau) +
                          std::lgamma(1.0 + l1 - (q - 1.0) / tau) +
                          std::lgamma(1.0 + l2 - (q - 1.0) / tau) -
                          std::lgamma(2.0 + l1 + l2 - (2.0 * q - 2.0) / tau) -
                          std::lgamma(2.0 + l1 + l2 - (2.0 * q - 3.0) / tau));
        tally(lhs, rhs);
      }
      break;
    }
    case SelbergIdentity::involution: {
      // (a) factor level: E[X^{q/tau}] at (1/tau, tau lambda) vs E[X^q]
      MasterParams mp{1.0, tau, 1.0 + tau * (1.0 + l1), 1.0 + tau * (1.0 + l2)};
      double ti = 1.0 / tau;
      MasterParams mi{1.0, ti, 1.0 + ti * (1.0 + tau * l1), 1.0 + ti * (1.0 + tau * l2)};
      MasterFactors f = master_factors(mp), g = master_factors(mi);
      for (double q : grid) {
        // lognormal factor
        tally(std::exp(0.5 * f.sigma2 * q * q), std::exp(0.5 * g.sigma2 * (q / tau) * (q / tau)));
        const std::optional<BarnesBetaParams>* fx[3] = {&f.x1, &f.x2, &f.x3};
        const std::optional<BarnesBetaParams>* gx[3] = {&g.x1, &g.x2, &g.x3};
        for (int i = 0; i < 3; ++i) {
          cd lhs = *fx[i] ? eta(**fx[i], cd(-q), cfg).value : cd(1.0);
          cd rhs = *gx[i] ? eta(**gx[i], cd(-q / tau), cfg).value : cd(1.0);
          tally(lhs, rhs);
        }
        // (b) reduced transform: the Gamma(1-q)/Gamma(1-q/tau) relation
        SelbergParams pi{ti, tau * l1, tau * l2};
        cd lhs = selberg_mellin_reduced(pi, cd(q / tau), cfg);
        cd rhs = std::exp(std::lgamma(1.0 - q) - std::lgamma(1.0 - q / tau)) *
                 selberg_mellin_reduced(p, cd(q), cfg);
        tally(lhs, rhs);
      }
      break;
    }
  }
  return rep;
}

cd critical_mellin(cd q, const QuadratureConfig& cfg) {
  if (!(q.real() < 1.0)) throw domain_error("critical_mellin: requires Re(q) < 1");
  cd lg = log_barnes_g(4.0 - 2.0 * q, cfg) - log_barnes_g(1.0 - q, cfg) -
          2.0 * log_barnes_g(2.0 - q, cfg) - log_barnes_g(4.0 - q, cfg);
  return std::exp(lg);
}

double critical_moment_neg(int l) {
  if (l < 1) throw domain_error("critical_moment_neg: l must be >= 1");
  double lg = 0.0;
  for (int k = 0; k < l; ++k)
    lg += std::lgamma(double(3 + l + k) + 1.0) - 2.0 * std::lgamma(double(k + 1) + 1.0) -
          std::lgamma(double(k) + 1.0);
  return std::exp(lg);
}

CriticalSampler::CriticalSampler(int K, const QuadratureConfig& cfg)
    : x2_(BarnesBetaParams({1.0, 1.0}, 2.0, {0.5, 0.5}), -1, K, true, cfg) {}

double CriticalSampler::draw(RngStream& rng) const {
  constexpr double pi_over_32 = 3.14159265358979323846 / 32.0;
  double logv = std::log(pi_over_32);
  logv += std::sqrt(4.0 * kLog2) * rng.normal();      // lognormal
  logv -= std::log(x2_.draw(rng));                    // beta^{-1}_{2,2}
  logv += std::log(sample_pareto23(rng));             // Pareto 2/y^3
  logv += std::log(sample_frechet_inv_sq(rng));       // Frechet y^{-2} e^{-1/y}
  return std::exp(logv);
}

std::vector<double> critical_sample(RngStream& rng, std::size_t n, int K) {
  CriticalSampler s(K);
  std::vector<double> out(n);
  for (auto& v : out) v = s.draw(rng);
  return out;
}

BarnesBetaParams beta22_delta_params(double delta) {
  if (!(delta > 0.0)) throw domain_error("beta22_delta_params: delta must be positive");
  return BarnesBetaParams({1.0, 1.0}, delta, {0.5, 0.5});
}

double beta22_delta_log_mellin_levy(double delta, double q, const QuadratureConfig& cfg) {
  if (!(q > -delta)) throw domain_error("beta22_delta_mellin: requires q > -delta");
  double rate = std::min(1.0, delta + std::min(0.0, q));
  double T = cfg.split_point / rate;
  auto f = [&](double t) -> cd {
    double sech = 1.0 / std::cosh(0.25 * t);
    double v = 0.25 * std::expm1(-q * t) * std::exp(-(delta - 0.5) * t) * sech * sech / t;
    return {v, 0.0};
  };
  return integrate_decaying(f, 0.0, T, 0.25 * cfg.abs_tol, cfg.max_refinements).value.real();
}

double beta22_delta_mellin(double delta, double q, Beta22Route route,
                           const QuadratureConfig& cfg) {
  switch (route) {
    case Beta22Route::barnes_g: {
      cd lg = log_barnes_g(cd(delta), cfg) - log_barnes_g(cd(q + delta), cfg);
      lg += 2.0 * (log_barnes_g(cd(q + delta + 0.5), cfg) - log_barnes_g(cd(delta + 0.5), cfg));
      lg += log_barnes_g(cd(delta + 1.0), cfg) - log_barnes_g(cd(q + delta + 1.0), cfg);
      return std::exp(lg).real();
    }
    case Beta22Route::eta:
      return eta(beta22_delta_params(delta), cd(q), cfg).value.real();
    case Beta22Route::levy:
      return std::exp(beta22_delta_log_mellin_levy(delta, q, cfg));
  }
  throw domain_error("beta22_delta_mellin: unknown route");
}

double beta22_delta_cumulant(int n, double delta, int m_max) {
  if (n < 1) throw domain_error("beta22_delta_cumulant: n must be >= 1");
  if (!(delta > 0.0 && delta < 1.0))
    throw domain_error("beta22_delta_cumulant: series converges only for 0 < delta < 1");
  const double x = -(delta - 0.5);
  double sum = 0.0, xm = 1.0, mfac = 1.0;
  double last = 0.0;
  for (int m = 0; m <= m_max; ++m) {
    if (m > 0) {
      xm *= x;
      mfac *= m;
    }
    double s = 0.5 * (m + n);
    double term = xm / mfac * std::pow(32.0, s) * std::tgamma(s) * c2_mellin(-s);
    sum += term;
    if (m > 4 && std::abs(term) < 1e-15 * std::abs(sum) && std::abs(last) < 1e-15 * std::abs(sum))
      return 0.125 * sum;
    last = term;
  }
  throw accuracy_error("beta22_delta_cumulant: series not converged", 0.125 * sum,
                       std::abs(last));
}

}  // namespace barnesbeta
