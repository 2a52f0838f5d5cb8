#include "barnesbeta/xi.hpp"

#include <array>
#include <cmath>

#include "barnesbeta/errors.hpp"
#include "barnesbeta/specfun.hpp"

namespace barnesbeta {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Borwein algorithm for the alternating zeta (eta) function, s > 0.
double alternating_zeta(double s) {
  constexpr int n = 28;
  // d_k = n sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!)
  static const std::array<double, n + 1> d = [] {
    std::array<double, n + 1> out{};
    double acc = 0.0;
    for (int i = 0; i <= n; ++i) {
      acc += std::exp(std::lgamma(n + i) + i * std::log(4.0) - std::lgamma(n - i + 1.0) -
                      std::lgamma(2.0 * i + 1.0));
      out[size_t(i)] = n * acc;
    }
    return out;
  }();
  double sum = 0.0, sign = 1.0;
  for (int k = 0; k < n; ++k) {
    sum += sign * (d[n] - d[k]) / std::pow(double(k + 1), s);
    sign = -sign;
  }
  return sum / d[n];
}

double zeta_pos(double s) {
  // eta(s) = (1 - 2^{1-s}) zeta(s)
  double denom = -std::expm1((1.0 - s) * std::log(2.0));
  return alternating_zeta(s) / denom;
}

}  // namespace

double riemann_zeta(double s) {
  if (s == 1.0) throw pole_error("riemann_zeta: pole at s = 1");
  if (s >= 0.5) return zeta_pos(s);
  if (s == 0.0) return -0.5;
  // reflection: zeta(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s) zeta(1-s)
  double sinf = std::sin(0.5 * kPi * s);
  if (sinf == 0.0) return 0.0;  // negative even integers
  return std::pow(2.0, s) * std::pow(kPi, s - 1.0) * sinf *
         std::exp(std::lgamma(1.0 - s)) * zeta_pos(1.0 - s);
}

double riemann_xi_direct(double s) {
  if (s == 0.0 || s == 1.0) return 0.5;
  if (std::abs(s - 1.0) < 1e-3) {
    // (s-1) zeta(s) = 1 + gamma (s-1) - gamma_1 (s-1)^2 + ...
    double u = s - 1.0;
    double sz = 1.0 + euler_gamma * u + 0.0728158454836767 * u * u;
    return std::exp(std::lgamma(0.5 * s + 1.0) - 0.5 * s * std::log(kPi)) * sz;
  }
  // (1/2) s (s-1) Gamma(s/2) = (s-1) Gamma(s/2 + 1)
  double g;
  if (s > 0.0) {
    g = std::exp(std::lgamma(0.5 * s + 1.0));
  } else {
    g = gamma_euler(std::complex<double>(0.5 * s + 1.0)).real();
  }
  return (s - 1.0) * std::pow(kPi, -0.5 * s) * g * riemann_zeta(s);
}

double riemann_xi(double s) { return s >= 0.5 ? riemann_xi_direct(s) : riemann_xi_direct(1.0 - s); }

double theta(double t) {
  if (!(t > 0.0)) throw domain_error("theta: t must be positive");
  double sum = 0.0;
  for (int n = 1; n < 4000000; ++n) {
    double term = std::exp(-kPi * t * n * n);
    sum += term;
    if (term < 1e-16) break;
  }
  return 1.0 + 2.0 * sum;
}

double theta_fast(double t) {
  if (!(t > 0.0)) throw domain_error("theta: t must be positive");
  if (t >= 1.0) return theta(t);
  return theta(1.0 / t) / std::sqrt(t);
}

double theta_trunc(double t, int M) {
  if (!(t > 0.0)) throw domain_error("theta_trunc: t must be positive");
  if (M < 1) throw domain_error("theta_trunc: M must be >= 1");
  double v = 1.0;
  for (int n = 1; n <= M; ++n) {
    double even = -std::expm1(-2.0 * n * kPi * t);
    double odd = 1.0 + std::exp(-(2.0 * n - 1.0) * kPi * t);
    v *= even * odd * odd;
  }
  return v;
}

BarnesBetaParams beta_m_delta(int M, double delta) {
  if (M < 1) throw domain_error("beta_m_delta: M must be >= 1");
  if (!(delta > 0.0)) throw domain_error("beta_m_delta: delta must be positive");
  std::vector<double> a, b;
  const double half_pi2 = 0.5 * kPi * kPi;
  for (int i = 1; i <= M; ++i) {
    a.push_back((2 * i - 1) * half_pi2);
    a.push_back((2 * i - 1) * half_pi2);
  }
  for (int j = 1; j <= M; ++j) {
    b.push_back((4 * j - 2) * half_pi2);
    b.push_back((4 * j - 2) * half_pi2);
    b.push_back(2 * j * half_pi2);
  }
  return BarnesBetaParams(std::move(a), delta, std::move(b));
}

double c2_mellin(double q) {
  // (2^{2q+2}-1)/(q+1), stable through the removable point q = -1
  double u = q + 1.0;
  double frac = (std::abs(u) < 0.1) ? (u == 0.0 ? 2.0 * std::log(2.0)
                                                : std::expm1(2.0 * u * std::log(2.0)) / u)
                                    : (std::pow(4.0, u) - 1.0) / u;
  double arg = 2.0 * q + 2.0;
  double xi_v = riemann_xi(arg);
  return frac * std::pow(2.0 / kPi, q + 1.0) * xi_v;
}

double s2_delta_mean(double delta) {
  const double a = 0.5 * kPi * kPi;
  const int N = 20000;
  double sum = 0.0;
  for (int n = 1; n <= N; ++n) sum += 2.0 / (a * n * n + delta);
  // integral tail from N + 1/2 (midpoint rule; next correction ~ f''/24)
  double r = std::sqrt(a / delta);
  sum += 2.0 / std::sqrt(a * delta) * (0.5 * kPi - std::atan((N + 0.5) * r));
  return sum;
}

double s2_delta_variance(double delta) {
  double sum = 0.0;
  for (int n = 1; n < 200000; ++n) {
    double r = 0.5 * kPi * kPi * n * n + delta;
    double term = 2.0 / (r * r);
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}

namespace {

double sinhc_sq(double x2) {
  // [sqrt(x2)/sinh(sqrt(x2))]^2 with the x2 -> 0 limit
  if (x2 < 1e-12) return 1.0;
  double r = std::sqrt(x2);
  return (r / std::sinh(r)) * (r / std::sinh(r));
}

}  // namespace

double s2_delta_transform(S2Transform kind, double q, double delta,
                          const QuadratureConfig& cfg) {
  if (!(delta > 0.0)) throw domain_error("s2_delta_transform: delta must be positive");
  switch (kind) {
    case S2Transform::laplace_closed: {
      if (!(q > -delta)) throw domain_error("s2_delta_transform: requires q > -delta");
      return sinhc_sq(2.0 * (q + delta)) / sinhc_sq(2.0 * delta);
    }
    case S2Transform::laplace_levy: {
      if (!(q > -delta)) throw domain_error("s2_delta_transform: requires q > -delta");
      // substitute t = u^2: the theta - 1 kernel has a t^{-1/2} head
      double rate = std::min(1.0, delta + std::min(0.0, q));
      double umax = std::sqrt((cfg.split_point + 12.0) / rate);
      auto f = [&](double u) -> std::complex<double> {
        double t = u * u;
        double kern = theta_fast(0.5 * kPi * t) - 1.0;
        double v = std::expm1(-q * t) * std::exp(-delta * t) * kern * 2.0 / u;
        return {v, 0.0};
      };
      double lg = integrate_decaying(f, 0.0, umax, 0.25 * cfg.abs_tol, cfg.max_refinements)
                      .value.real();
      return std::exp(lg);
    }
    case S2Transform::mellin_series: {
      if (!(delta < 0.5 * kPi * kPi))
        throw domain_error("s2_delta_transform: Mellin series needs delta < pi^2/2");
      double sum = 0.0, term;
      double coef = 1.0;  // (1/n!) (-2 delta/pi)^n
      for (int n = 0; n < 400; ++n) {
        if (n > 0) coef *= (-2.0 * delta / kPi) / n;
        term = coef * 2.0 * riemann_xi(2.0 * q + 2.0 * n);
        sum += term;
        if (n > 3 && std::abs(term) < 1e-15 * std::abs(sum)) break;
      }
      return std::pow(2.0 / kPi, q) * sum / sinhc_sq(2.0 * delta);
    }
  }
  throw domain_error("s2_delta_transform: unknown kind");
}

void TDeltaParams::validate() const {
  if (!(delta > 0.0)) throw domain_error("TDeltaParams: delta must be positive");
  if (n_terms < 100) throw domain_error("TDeltaParams: n_terms must be >= 100");
}

TDeltaSampler::TDeltaSampler(const TDeltaParams& p) : p_(p) {
  p.validate();
  inv_rate_.resize(size_t(p.n_terms));
  for (int n = 1; n <= p.n_terms; ++n)
    inv_rate_[size_t(n - 1)] = 1.0 / (0.5 * kPi * kPi * n * n + p.delta);
  if (p.tail_mean_correction) {
    // sum_{n > n_terms} 2/(pi^2 n^2/2 + delta)
    double full = s2_delta_mean(p.delta);
    double head = 0.0;
    for (double ir : inv_rate_) head += 2.0 * ir;
    tail_shift_ = full - head;
  }
}

double TDeltaSampler::draw(RngStream& rng) const {
  double total = tail_shift_ + rng.exponential() / p_.delta;
  for (double ir : inv_rate_) total += rng.gamma2() * ir;
  return total;
}

std::vector<double> t_delta_sample(const TDeltaParams& p, RngStream& rng, std::size_t n) {
  TDeltaSampler s(p);
  std::vector<double> out(n);
  for (auto& v : out) v = s.draw(rng);
  return out;
}

double t_delta_laplace(double q, double delta, const QuadratureConfig& cfg) {
  if (!(q > 0.0) || !(delta > 0.0))
    throw domain_error("t_delta_laplace: requires q > 0, delta > 0");
  double umax = std::sqrt((cfg.split_point + 12.0) / std::min(1.0, delta));
  auto f = [&](double u) -> std::complex<double> {
    double t = u * u;
    double kern = theta_fast(0.5 * kPi * t);
    double v = std::expm1(-q * t) * std::exp(-delta * t) * kern * 2.0 / u;
    return {v, 0.0};
  };
  double lg =
      integrate_decaying(f, 0.0, umax, 0.25 * cfg.abs_tol, cfg.max_refinements).value.real();
  return std::exp(lg);
}

double t_delta_moment_exact(int q, const TDeltaParams& p) {
  p.validate();
  if (q < 0 || q > 3) throw domain_error("t_delta_moment_exact: q in {0,..,3}");
  if (q == 0) return 1.0;
  // cumulants of the full series plus Exp(delta); j = 1 needs the analytic
  // tail, higher orders converge fast
  auto cum = [&](int j) {
    if (j == 1) return s2_delta_mean(p.delta) + 1.0 / p.delta;
    double s = 0.0;
    for (int n = 1; n < 400000; ++n) {
      double ir = 1.0 / (0.5 * kPi * kPi * n * n + p.delta);
      double term = 2.0 * factorial(j - 1) * std::pow(ir, j);
      s += term;
      if (term < 1e-17 * s) break;
    }
    s += factorial(j - 1) / std::pow(p.delta, j);
    return s;
  };
  double k1 = cum(1);
  if (q == 1) return k1;
  double k2 = cum(2);
  if (q == 2) return k2 + k1 * k1;
  double k3 = cum(3);
  return k3 + 3.0 * k2 * k1 + k1 * k1 * k1;
}

double t_delta_functional_rhs(int q, double delta) {
  return s2_delta_transform(S2Transform::mellin_series, double(q), delta);
}

TDeltaResidualReport t_delta_functional_residual(int q, double delta, const TDeltaParams& p,
                                                 std::uint64_t n, std::uint64_t seed,
                                                 std::uint64_t stream_base) {
  if (q < 1 || q > 3)
    throw domain_error("t_delta_functional_residual: q in {1,2,3} (MC-estimable)");
  if (!(delta > 0.0 && delta < 0.5 * kPi * kPi))
    throw domain_error("t_delta_functional_residual: requires 0 < delta < pi^2/2");
  TDeltaParams pl = p;
  pl.delta = delta;
  TDeltaSampler sampler(pl);
  double ratio = double(q) / delta;
  auto value = [&](RngStream& rng) {
    double t = sampler.draw(rng);
    return std::pow(t, q) - ratio * std::pow(t, q - 1);
  };
  SampleStats st = mc_parallel(value, n, seed, stream_base);
  TDeltaResidualReport rep;
  rep.lhs = st.mean;
  rep.rhs = t_delta_functional_rhs(q, delta);
  rep.stderr_combined = st.stderr_mean();
  rep.residual_in_stderr =
      std::abs(rep.lhs - rep.rhs) / std::max(rep.stderr_combined, 1e-300);
  rep.n = st.n;
  return rep;
}

}  // namespace barnesbeta
