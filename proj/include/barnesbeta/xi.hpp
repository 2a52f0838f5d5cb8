#pragma once

#include <string>
#include <vector>

#include "barnesbeta/mellin.hpp"
#include "barnesbeta/sampling.hpp"

namespace barnesbeta {

// Riemann zeta on the real line (Borwein alternating-series acceleration
// for s > 0, reflection below); absolute accuracy ~1e-12 on [-10, 30].
double riemann_zeta(double s);

// xi(s) = (1/2) s (s-1) pi^{-s/2} Gamma(s/2) zeta(s); the public branch
// reflects s < 1/2 through xi(s) = xi(1-s).
double riemann_xi(double s);
double riemann_xi_direct(double s);  // no reflection shortcut (test route)

// Jacobi theta(t) = 1 + 2 sum e^{-pi t n^2} by direct summation and its
// triple-product truncations theta_M.
double theta(double t);
double theta_trunc(double t, int M);
double theta_fast(double t);  // modular form t^{-1/2} theta(1/t) for small t

// Parameters of beta_{2M,3M} whose Levy density is e^{-delta t} theta_M(pi t/2)/t.
BarnesBetaParams beta_m_delta(int M, double delta);

// E[C_2^q] = (2^{2q+2}-1)/(q+1) (2/pi)^{q+1} xi(2q+2); q = -1 is the
// removable point, evaluated by the expm1 limit.
double c2_mellin(double q);

enum class S2Transform { laplace_closed, laplace_levy, mellin_series };

// Laplace or Mellin transform of S_2(delta); the Mellin series requires
// delta < pi^2/2.
double s2_delta_transform(S2Transform kind, double q, double delta,
                          const QuadratureConfig& cfg = {});

double s2_delta_mean(double delta);      // sum 2/(pi^2 n^2/2 + delta)
double s2_delta_variance(double delta);  // sum 2/(pi^2 n^2/2 + delta)^2

struct TDeltaParams {
  double delta = 0.5;
  int n_terms = 2000;             // truncation of the gamma series
  bool tail_mean_correction = true;
  void validate() const;
};

class TDeltaSampler {
public:
  explicit TDeltaSampler(const TDeltaParams& p);
  double draw(RngStream& rng) const;
  double tail_shift() const { return tail_shift_; }

private:
  TDeltaParams p_;
  std::vector<double> inv_rate_;  // 1/(pi^2 n^2/2 + delta)
  double tail_shift_ = 0.0;
};

std::vector<double> t_delta_sample(const TDeltaParams& p, RngStream& rng, std::size_t n);

// Laplace transform of T(delta) via the theta-kernel Levy integral.
double t_delta_laplace(double q, double delta, const QuadratureConfig& cfg = {});

// Exact integer moments (q <= 3) from the cumulants of the gamma series
// plus the independent Exp(delta) part.
double t_delta_moment_exact(int q, const TDeltaParams& p);

struct TDeltaResidualReport {
  double lhs = 0.0, rhs = 0.0;
  double stderr_combined = 0.0;
  double residual_in_stderr = 0.0;  // |lhs-rhs| / stderr
  std::uint64_t n = 0;
};

// Functional-equation residual E[T^q] - (q/delta) E[T^{q-1}] vs the xi
// series, in combined-stderr units; q in {1,2,3}, 0 < delta < pi^2/2.
TDeltaResidualReport t_delta_functional_residual(int q, double delta, const TDeltaParams& p,
                                                 std::uint64_t n, std::uint64_t seed,
                                                 std::uint64_t stream_base = 7000);

// RHS of the functional equation: E[S_2(delta)^q] from the xi series.
double t_delta_functional_rhs(int q, double delta);

}  // namespace barnesbeta
