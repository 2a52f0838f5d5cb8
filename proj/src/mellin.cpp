#include "barnesbeta/mellin.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "barnesbeta/errors.hpp"
#include "barnesbeta/specfun.hpp"

namespace barnesbeta {

namespace {

using cd = std::complex<double>;

void check_cut(const BarnesBetaParams& p, cd q) {
  // refuse on (and within 1e-9 of) the cut (-inf, -b0]
  if (std::abs(q.imag()) < 1e-9 && q.real() <= -p.b0 + 1e-9)
    throw domain_error("eta: q on the cut (-inf, -b0]");
  if (!(q.real() > -p.b0))
    throw domain_error("eta: only Re(q) > -b0 is supported by the integral representation");
}

BarnesBetaParams drop_a(const BarnesBetaParams& p, int i) {
  BarnesBetaParams r = p;
  r.a.erase(r.a.begin() + i);
  r.M = p.M - 1;
  return r;
}

BarnesBetaParams drop_b(const BarnesBetaParams& p, int j) {
  BarnesBetaParams r = p;
  r.b.erase(r.b.begin() + j);
  r.N = p.N - 1;
  return r;
}

double rel_gap(cd lhs, cd rhs) {
  double scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
  return std::abs(lhs - rhs) / scale;
}

// log eta as a difference of two S_N L_M values
cd log_eta(const BarnesBetaParams& p, cd q, const QuadratureConfig& cfg) {
  if (q == cd(0.0)) return 0.0;
  return s_log_gamma(p, q, cfg).value - s_log_gamma(p, 0.0, cfg).value;
}

// (S_N L_M)(q + shift) - (S_N L_M)(shift), stable for large shifts when the
// closed forms apply (M <= 1)
cd s_log_gamma_diff(const BarnesBetaParams& p, cd q, double shift, const QuadratureConfig& cfg) {
  int N = p.N;
  if (p.M <= 1) {
    double a = p.M == 1 ? p.a[0] : 1.0;
    cd sum = 0.0;
    for (unsigned mask = 0; mask < (1u << N); ++mask) {
      double x = shift + p.b0;
      for (int j = 0; j < N; ++j)
        if (mask & (1u << j)) x += p.b[size_t(j)];
      double sign = (std::popcount(mask) % 2 == 0) ? 1.0 : -1.0;
      if (p.M == 0)
        sum += sign * (-log1p_c(q / x));
      else
        sum += sign * lgamma_diff(x / a, q / a);
    }
    return sum;
  }
  return s_log_gamma(p, q + shift, cfg).value - s_log_gamma(p, cd(shift), cfg).value;
}

// -(S_N L_0)(q | b0', b) = sum over subsets S of (-1)^{|S|} log(q + b0' + sum S)
cd neg_s_log_gamma0(cd q, double b0, const std::vector<double>& b) {
  int N = int(b.size());
  cd sum = 0.0;
  for (unsigned mask = 0; mask < (1u << N); ++mask) {
    double shift = b0;
    for (int j = 0; j < N; ++j)
      if (mask & (1u << j)) shift += b[size_t(j)];
    double sign = (std::popcount(mask) % 2 == 0) ? 1.0 : -1.0;
    sum += sign * std::log(q + shift);
  }
  return sum;
}

}  // namespace

BarnesBetaParams::BarnesBetaParams(std::vector<double> a_in, double b0_in,
                                   std::vector<double> b_in)
    : M(int(a_in.size())), N(int(b_in.size())), a(std::move(a_in)), b0(b0_in),
      b(std::move(b_in)) {
  if (!(b0 > 0.0)) throw domain_error("BarnesBetaParams: b0 must be positive");
  for (double v : a)
    if (!(v > 0.0)) throw domain_error("BarnesBetaParams: a periods must be positive");
  for (double v : b)
    if (!(v > 0.0)) throw domain_error("BarnesBetaParams: b periods must be positive");
  if (N > kSubsetCap) throw capacity_error("BarnesBetaParams: N exceeds subset enumeration cap");
}

void BarnesBetaParams::require_distribution() const {
  if (M > N) throw domain_error("BarnesBetaParams: distribution semantics require M <= N");
}

cd s_operator(const std::function<cd(cd)>& h, cd q, double b0, const std::vector<double>& b) {
  int N = int(b.size());
  if (N > kSubsetCap) throw capacity_error("s_operator: N exceeds subset enumeration cap");
  cd sum = 0.0;
  for (unsigned mask = 0; mask < (1u << N); ++mask) {
    cd shift = q + b0;
    for (int j = 0; j < N; ++j)
      if (mask & (1u << j)) shift += b[size_t(j)];
    double sign = (std::popcount(mask) % 2 == 0) ? 1.0 : -1.0;
    sum += sign * h(shift);
  }
  return sum;
}

LogGammaValue s_log_gamma(const BarnesBetaParams& p, cd q, const QuadratureConfig& cfg) {
  GammaParams gp = p.gamma_params();
  int N = p.N;
  LogGammaValue out;
  for (unsigned mask = 0; mask < (1u << N); ++mask) {
    cd w = q + p.b0;
    for (int j = 0; j < N; ++j)
      if (mask & (1u << j)) w += p.b[size_t(j)];
    double sign = (std::popcount(mask) % 2 == 0) ? 1.0 : -1.0;
    LogGammaValue v = log_multi_gamma(gp, w, cfg);
    out.value += sign * v.value;
    out.est_error += v.est_error;
  }
  return out;
}

MellinValue eta(const BarnesBetaParams& p, cd q, const QuadratureConfig& cfg) {
  check_cut(p, q);
  MellinValue out;
  out.q = q;
  out.in_domain = q.real() > -p.b0;
  if (q == cd(0.0)) {
    out.value = 1.0;
    return out;
  }
  LogGammaValue sq = s_log_gamma(p, q, cfg);
  LogGammaValue s0 = s_log_gamma(p, 0.0, cfg);
  out.value = std::exp(sq.value - s0.value);
  out.est_error = (sq.est_error + s0.est_error) * std::abs(out.value);
  return out;
}

double levy_density(const BarnesBetaParams& p, double t) {
  if (!(t > 0.0)) throw domain_error("levy_density: t must be positive");
  double v = std::exp(-p.b0 * t) / t;
  for (double bj : p.b) v *= -std::expm1(-bj * t);
  for (double ai : p.a) v /= -std::expm1(-ai * t);
  return v;
}

namespace {

// integrate g(t) * rho(t) over (0, inf) where g is bounded and rho is the
// Levy density; the integrand is evaluated in stable expm1 form
double levy_integral(const BarnesBetaParams& p, const std::function<double(double)>& g,
                     const QuadratureConfig& cfg) {
  double T = cfg.split_point / std::min(1.0, p.b0);
  auto f = [&](double t) -> cd {
    // rho(t) with the t^{N-M-1} prefactor factored stably
    double v = std::exp(-p.b0 * t);
    for (double bj : p.b) v *= -std::expm1(-bj * t) / t;
    for (double ai : p.a) v *= t / (-std::expm1(-ai * t));
    // v = rho(t) * t^{N - 1} / t^{N-M-1}... assemble: rho = v * t^{N-M-1}
    double w = v * std::pow(t, p.N - p.M - 1);
    return cd(g(t) * w, 0.0);
  };
  QuadResult r = integrate_decaying(f, 0.0, T, 0.25 * cfg.abs_tol, cfg.max_refinements);
  return r.value.real();
}

}  // namespace

double levy_mass(const BarnesBetaParams& p, const QuadratureConfig& cfg) {
  if (!(p.M < p.N)) throw domain_error("levy_mass: finite mass requires M < N");
  return levy_integral(p, [](double) { return 1.0; }, cfg);
}

double levy_mean(const BarnesBetaParams& p, const QuadratureConfig& cfg) {
  p.require_distribution();
  return levy_integral(p, [](double t) { return t; }, cfg);
}

cd levy_exponent(const BarnesBetaParams& p, cd q, const QuadratureConfig& cfg) {
  p.require_distribution();
  if (!(q.real() > -p.b0))
    throw domain_error("levy_exponent: requires Re(q) > -b0 for convergence");
  cfg.validate();
  double rate = std::min(1.0, p.b0 + std::min(0.0, q.real()));
  double T = cfg.split_point / rate;
  auto f = [&](double t) -> cd {
    double v = std::exp(-p.b0 * t);
    for (double bj : p.b) v *= -std::expm1(-bj * t) / t;
    for (double ai : p.a) v *= t / (-std::expm1(-ai * t));
    double w = v * std::pow(t, p.N - p.M - 1);
    return expm1_c(-q * t) * w;
  };
  QuadResult r = integrate_decaying(f, 0.0, T, 0.25 * cfg.abs_tol, cfg.max_refinements);
  return r.value;
}

double mass_at_one(const BarnesBetaParams& p, MassMethod method, const QuadratureConfig& cfg) {
  if (!(p.M < p.N)) throw domain_error("mass_at_one: atom exists only for M < N");
  switch (method) {
    case MassMethod::quadrature:
      return std::exp(-levy_mass(p, cfg));
    case MassMethod::sn_formula:
      return std::exp(-s_log_gamma(p, 0.0, cfg).value.real());
    case MassMethod::product: {
      int K = p.M <= 1 ? 20000 : (p.M == 2 ? 1500 : 100);
      BarnesProductResult r = sl_action_product(p, 0.0, K);
      return r.extrapolated.real();
    }
  }
  throw domain_error("mass_at_one: unknown method");
}

double lattice_multiplicity(int k, int M) {
  if (k == 0) return 1.0;
  double s = 0.0;
  for (int m = 1; m <= std::min(M, k); ++m) s += binomial(k - 1, m - 1) * binomial(M, m);
  return s;
}

BarnesProductResult sl_action_product(const BarnesBetaParams& p, cd q, int K) {
  if (!(p.M < p.N)) throw domain_error("sl_action_product: requires M < N");
  auto log_partial = [&](int box) -> cd {
    cd sum = 0.0;
    if (p.M == 0) return neg_s_log_gamma0(q, p.b0, p.b);
    bool collapsed = std::all_of(p.a.begin(), p.a.end(), [](double v) { return v == 1.0; });
    if (collapsed) {
      for (int k = 0; k <= box; ++k)
        sum += lattice_multiplicity(k, p.M) * neg_s_log_gamma0(q + double(k), p.b0, p.b);
      return sum;
    }
    std::vector<int> idx(size_t(p.M), 0);
    while (true) {
      double omega = 0.0;
      for (int j = 0; j < p.M; ++j) omega += idx[size_t(j)] * p.a[size_t(j)];
      sum += neg_s_log_gamma0(q + omega, p.b0, p.b);
      int j = 0;
      while (j < p.M && ++idx[size_t(j)] > box) idx[size_t(j++)] = 0;
      if (j == p.M) break;
    }
    return sum;
  };
  if (p.M == 0) {
    cd v = std::exp(log_partial(0));
    return {v, v, 0.0};
  }
  cd lK = log_partial(K);
  cd lK2 = log_partial(K / 2);
  // log tail ~ c / K for a ~c/Omega^2 factor decay: Richardson on the pair
  cd extrap = 2.0 * lK - lK2;
  double err = std::abs(lK - lK2);
  return {std::exp(lK), std::exp(extrap), err * std::abs(std::exp(extrap))};
}

double moment_int(const BarnesBetaParams& p, int k, int sign, int period_index,
                  const QuadratureConfig& cfg) {
  p.require_distribution();
  if (k < 1) throw domain_error("moment_int: k must be a positive integer");
  if (p.M == 0) {
    // no period structure: the moment is eta at the integer itself
    if (sign < 0 && !(double(k) < p.b0))
      throw domain_error("moment_int: negative moment requires k < b0");
    return eta(p, cd(sign > 0 ? double(k) : -double(k)), cfg).value.real();
  }
  if (period_index < 0 || period_index >= p.M)
    throw domain_error("moment_int: period index out of range");
  double ai = p.a[size_t(period_index)];
  if (sign < 0 && !(k * ai < p.b0))
    throw domain_error("moment_int: negative moment requires k a_i < b0");

  BarnesBetaParams hat = drop_a(p, period_index);
  cd acc = 0.0;
  for (int l = 0; l < k; ++l) {
    cd arg = (sign > 0) ? cd(l * ai) : cd(-(l + 1) * ai);
    acc += s_log_gamma(hat, arg, cfg).value;
  }
  double value = std::exp((sign > 0 ? -1.0 : 1.0) * acc.real());

  // second route when every a_i = 1 (positive moments)
  if (sign > 0 && std::all_of(p.a.begin(), p.a.end(), [](double v) { return v == 1.0; })) {
    double logv = 0.0;
    BarnesBetaParams cur = p;
    for (int i = 1; i <= p.M - 1; ++i) {
      cur = drop_a(cur, 0);
      double si = s_log_gamma(cur, 0.0, cfg).value.real();
      double sgn = (i % 2 == 0) ? 1.0 : -1.0;
      logv += sgn * binomial(k, i) * si;
    }
    double msign = (p.M % 2 == 0) ? 1.0 : -1.0;
    for (int v = 0; v <= k - p.M; ++v)
      logv -= msign * binomial(k - 1 - v, p.M - 1) *
              neg_s_log_gamma0(cd(double(v)), p.b0, p.b).real();
    double special = std::exp(logv);
    if (rel_gap(value, special) > 1e-7)
      throw accuracy_error("moment_int: finite-product route disagrees", value,
                           std::abs(value - special));
  }
  return value;
}

double moment_barnes_product(const BarnesBetaParams& p, int k, int period_index, int box_k,
                             const QuadratureConfig&) {
  p.require_distribution();
  if (p.M < 1) throw domain_error("moment_barnes_product: requires M >= 1");
  double ai = p.a[size_t(period_index)];
  BarnesBetaParams hat = drop_a(p, period_index);
  cd acc = 0.0;
  double err = 0.0;
  for (int l = 0; l < k; ++l) {
    BarnesProductResult r = sl_action_product(hat, cd(l * ai), box_k);
    acc += std::log(r.extrapolated);
    err += r.est_error / std::max(1e-300, std::abs(r.extrapolated));
  }
  return std::exp(acc.real());
}

MellinValue eta_shintani_product(const BarnesBetaParams& p, cd q, int period_index, int k0,
                                 const QuadratureConfig& cfg) {
  check_cut(p, q);
  if (p.M < 1) throw domain_error("eta_shintani_product: requires M >= 1");
  MellinValue out;
  out.q = q;
  if (q == cd(0.0)) {
    out.value = 1.0;
    return out;
  }
  double ai = p.a[size_t(period_index)];
  BarnesBetaParams hat = drop_a(p, period_index);
  auto block = [&](int from, int to) -> cd {
    cd sum = 0.0;
    for (int k = from; k <= to; ++k) sum += s_log_gamma_diff(hat, q, k * ai, cfg);
    return sum;
  };
  // partial log-sums converge like c/K; iterate doubling and track the
  // Richardson-extrapolated sequence, which converges like 1/K^2
  int K = std::max(4, k0);
  cd acc = block(0, K);
  cd prev_acc = acc;
  cd extrap = acc, prev_extrap;
  int guard = 0;
  do {
    prev_acc = acc;
    prev_extrap = extrap;
    acc += block(K + 1, 2 * K);
    K *= 2;
    extrap = 2.0 * acc - prev_acc;
    ++guard;
  } while (std::abs(extrap - prev_extrap) > std::max(10.0 * cfg.rel_tol, 1e-9) && guard < 16);
  if (guard >= 16)
    throw accuracy_error("eta_shintani_product: truncation did not converge", std::exp(extrap),
                         std::abs(extrap - prev_extrap));
  out.value = std::exp(extrap);
  out.est_error = std::abs(extrap - prev_extrap) * std::abs(out.value);
  return out;
}

BarnesProductResult eta_barnes_product(const BarnesBetaParams& p, cd q, int K) {
  check_cut(p, q);
  // log factor at offset Omega is neg0(Omega) - neg0(q + Omega), the log of
  // eta_{0,N}(q | b0 + Omega, b)
  auto log_partial = [&](int box) -> cd {
    if (p.M == 0)
      return neg_s_log_gamma0(0.0, p.b0, p.b) - neg_s_log_gamma0(q, p.b0, p.b);
    cd sum = 0.0;
    bool collapsed = std::all_of(p.a.begin(), p.a.end(), [](double v) { return v == 1.0; });
    if (collapsed) {
      for (int k = 0; k <= box; ++k)
        sum += lattice_multiplicity(k, p.M) *
               (neg_s_log_gamma0(cd(double(k)), p.b0, p.b) -
                neg_s_log_gamma0(q + double(k), p.b0, p.b));
      return sum;
    }
    std::vector<int> idx(size_t(p.M), 0);
    while (true) {
      double omega = 0.0;
      for (int j = 0; j < p.M; ++j) omega += idx[size_t(j)] * p.a[size_t(j)];
      sum += neg_s_log_gamma0(cd(omega), p.b0, p.b) - neg_s_log_gamma0(q + omega, p.b0, p.b);
      int j = 0;
      while (j < p.M && ++idx[size_t(j)] > box) idx[size_t(j++)] = 0;
      if (j == p.M) break;
    }
    return sum;
  };
  if (p.M == 0) {
    cd v = std::exp(log_partial(0));
    return {v, v, 0.0};
  }
  bool collapsed = std::all_of(p.a.begin(), p.a.end(), [](double v) { return v == 1.0; });
  // a box enumeration in M >= 2 dimensions grows like K^M; the 1/Omega^2
  // tail extrapolation keeps a few hundred per dimension sufficient
  if (p.M >= 2 && !collapsed) K = std::min(K, p.M == 2 ? 600 : 80);
  cd lK = log_partial(K);
  cd lK2 = log_partial(K / 2);
  cd extrap = 2.0 * lK - lK2;
  double err = std::abs(lK - lK2);
  return {std::exp(lK), std::exp(extrap), err * std::abs(std::exp(extrap))};
}

std::string to_string(BetaIdentity k) {
  switch (k) {
    case BetaIdentity::funceq: return "funceq";
    case BetaIdentity::algebra1: return "algebra1";
    case BetaIdentity::algebra2: return "algebra2";
    case BetaIdentity::algebra3: return "algebra3";
    case BetaIdentity::algebra4: return "algebra4";
    case BetaIdentity::scaling: return "scaling";
    case BetaIdentity::reduction: return "reduction";
  }
  return "?";
}

BetaIdentityReport beta_identity_residual(BetaIdentity kind, const BarnesBetaParams& p,
                                          const BetaIdentityKnobs& knobs,
                                          const QuadratureConfig& cfg) {
  BetaIdentityReport rep{kind, 0.0, 0, ""};
  std::ostringstream echo;
  echo << "M=" << p.M << " N=" << p.N << " b0=" << p.b0;
  std::vector<cd> grid = knobs.q_grid;
  if (grid.empty()) grid = {cd(0.3), cd(0.7), cd(1.2), cd(0.5, 0.4)};
  int i = knobs.period_index, j = knobs.b_index;

  auto tally = [&](cd lhs, cd rhs) {
    rep.residual = std::max(rep.residual, rel_gap(lhs, rhs));
    ++rep.points_tested;
  };

  switch (kind) {
    case BetaIdentity::funceq: {
      if (p.M < 1) throw domain_error("beta_identity_residual: funceq needs M >= 1");
      BarnesBetaParams hat = drop_a(p, i);
      for (cd q : grid) {
        cd lhs = log_eta(p, q + p.a[size_t(i)], cfg);
        cd rhs = log_eta(p, q, cfg) - s_log_gamma(hat, q, cfg).value;
        tally(std::exp(lhs), std::exp(rhs));
      }
      break;
    }
    case BetaIdentity::algebra1: {
      BarnesBetaParams lhs_p = drop_b(p, j);
      BarnesBetaParams rhs_p = drop_b(p, j);
      rhs_p.b0 = p.b0 + p.b[size_t(j)];
      for (cd q : grid)
        tally(eta(lhs_p, q, cfg).value, eta(p, q, cfg).value * eta(rhs_p, q, cfg).value);
      break;
    }
    case BetaIdentity::algebra2: {
      BarnesBetaParams shifted = p;
      shifted.b0 = p.b0 + p.a[size_t(i)];
      BarnesBetaParams hat = drop_a(p, i);
      for (cd q : grid)
        tally(eta(p, q, cfg).value, eta(shifted, q, cfg).value * eta(hat, q, cfg).value);
      break;
    }
    case BetaIdentity::algebra3: {
      BarnesBetaParams lhs_p = p;
      lhs_p.b[size_t(j)] += p.a[size_t(i)];
      BarnesBetaParams rhs_p = drop_b(drop_a(p, i), j);
      rhs_p.b0 = p.b0 + p.b[size_t(j)];
      for (cd q : grid)
        tally(eta(lhs_p, q, cfg).value, eta(p, q, cfg).value * eta(rhs_p, q, cfg).value);
      break;
    }
    case BetaIdentity::algebra4: {
      BarnesBetaParams lhs_p = p;
      lhs_p.b[size_t(j)] += p.a[size_t(i)];
      BarnesBetaParams shifted = p;
      shifted.b0 = p.b0 + p.a[size_t(i)];
      BarnesBetaParams rhs_p = drop_b(drop_a(p, i), j);
      for (cd q : grid)
        tally(eta(lhs_p, q, cfg).value, eta(shifted, q, cfg).value * eta(rhs_p, q, cfg).value);
      break;
    }
    case BetaIdentity::scaling: {
      double kappa = knobs.kappa;
      BarnesBetaParams ps = p;
      for (double& v : ps.a) v *= kappa;
      for (double& v : ps.b) v *= kappa;
      ps.b0 *= kappa;
      for (cd q : grid) tally(eta(ps, kappa * q, cfg).value, eta(p, q, cfg).value);
      break;
    }
    case BetaIdentity::reduction: {
      int n = knobs.reduction_n;
      double ai = p.a[size_t(i)];
      if (std::abs(p.b[size_t(j)] - n * ai) > 1e-12)
        throw domain_error("beta_identity_residual: reduction requires b_j = n a_i exactly");
      BarnesBetaParams base = drop_b(drop_a(p, i), j);
      for (cd q : grid) {
        cd rhs = 1.0;
        for (int k = 0; k < n; ++k) {
          BarnesBetaParams comp = base;
          comp.b0 = p.b0 + k * ai;
          rhs *= eta(comp, q, cfg).value;
        }
        tally(eta(p, q, cfg).value, rhs);
      }
      break;
    }
  }
  rep.params_echo = echo.str();
  return rep;
}

}  // namespace barnesbeta
