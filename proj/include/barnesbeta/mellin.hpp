#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "barnesbeta/multigamma.hpp"

namespace barnesbeta {

// Parameters (M, N, a, b0, b) of the Barnes beta law beta_{M,N}(a, b).
// M <= N is required for distribution semantics; the Mellin transform eta
// itself only needs a defined kernel.
struct BarnesBetaParams {
  int M = 0;
  int N = 0;
  std::vector<double> a;
  double b0 = 1.0;
  std::vector<double> b;

  BarnesBetaParams() = default;
  BarnesBetaParams(std::vector<double> a_in, double b0_in, std::vector<double> b_in);

  GammaParams gamma_params() const { return GammaParams(a); }
  void require_distribution() const;  // M <= N
};

struct MellinValue {
  std::complex<double> q;
  std::complex<double> value;
  double est_error = 0.0;
  bool in_domain = true;  // Re(q) > -b0
};

inline constexpr int kSubsetCap = 24;  // 2^N enumeration limit

// Alternating subset sum (S_N h)(q | b) over shifts q + b0 + sum of b's.
std::complex<double> s_operator(const std::function<std::complex<double>(std::complex<double>)>& h,
                                std::complex<double> q, double b0,
                                const std::vector<double>& b);

// (S_N L_M)(q | a, b) with closed forms for M <= 1 and memoized quadrature
// above; est_error accumulated over the 2^N evaluations.
LogGammaValue s_log_gamma(const BarnesBetaParams& p, std::complex<double> q,
                          const QuadratureConfig& cfg = {});

// Mellin transform eta_{M,N}(q | a, b) = exp(S_N L_M(q) - S_N L_M(0)).
MellinValue eta(const BarnesBetaParams& p, std::complex<double> q,
                const QuadratureConfig& cfg = {});

// Levy density of -log beta and its first two moments;
// rho(t) = e^{-b0 t} prod (1-e^{-b_j t}) f(t) / t^{M+1}.
double levy_density(const BarnesBetaParams& p, double t);
double levy_mass(const BarnesBetaParams& p, const QuadratureConfig& cfg = {});    // M < N
double levy_mean(const BarnesBetaParams& p, const QuadratureConfig& cfg = {});    // E[-log beta]

// Levy-Khinchine exponent with the e^{-qt}-1 kernel, so that
// exp(levy_exponent(q)) = eta(q); converges for Re(q) > -b0.
std::complex<double> levy_exponent(const BarnesBetaParams& p, std::complex<double> q,
                                   const QuadratureConfig& cfg = {});

enum class MassMethod { quadrature, sn_formula, product };

// P[beta = 1] for M < N by the requested route.
double mass_at_one(const BarnesBetaParams& p, MassMethod method,
                   const QuadratureConfig& cfg = {});

// E[beta^{+-k a_i}] via the finite S_N L_{M-1} sums; when all a_i = 1 the
// finite-product route is evaluated as well and must agree.
double moment_int(const BarnesBetaParams& p, int k, int sign, int period_index,
                  const QuadratureConfig& cfg = {});

// Truncated lattice product for E[beta^{k a_i}] built from the
// exp(-S_N L_{M-1}) factor products (cross-check route).
double moment_barnes_product(const BarnesBetaParams& p, int k, int period_index, int box_k,
                             const QuadratureConfig& cfg = {});

// Shintani factorization of eta along period i, adaptive truncation.
MellinValue eta_shintani_product(const BarnesBetaParams& p, std::complex<double> q,
                                 int period_index, int k0 = 64,
                                 const QuadratureConfig& cfg = {});

struct BarnesProductResult {
  std::complex<double> raw;
  std::complex<double> extrapolated;
  double est_error = 0.0;
};

// Lattice (Barnes) factorization of eta over offsets Omega = sum n_i a_i,
// box truncation K per dimension, 1/Omega^2 tail extrapolation on the log.
BarnesProductResult eta_barnes_product(const BarnesBetaParams& p, std::complex<double> q, int K);

// exp(-(S_N L_M)(q | a, b)) as a lattice product (M < N).
BarnesProductResult sl_action_product(const BarnesBetaParams& p, std::complex<double> q, int K);

// Composition count of k into at most M parts: lattice multiplicity of the
// collapsed product when all a_i = 1.
double lattice_multiplicity(int k, int M);

enum class BetaIdentity { funceq, algebra1, algebra2, algebra3, algebra4, scaling, reduction };

struct BetaIdentityKnobs {
  std::vector<std::complex<double>> q_grid;
  int period_index = 0;   // i for funceq/algebra/reduction
  int b_index = 0;        // j for algebra/reduction
  double kappa = 2.0;     // scaling
  int reduction_n = 1;    // b_j = n a_i
};

struct BetaIdentityReport {
  BetaIdentity kind;
  double residual = 0.0;
  int points_tested = 0;
  std::string params_echo;
};

BetaIdentityReport beta_identity_residual(BetaIdentity kind, const BarnesBetaParams& p,
                                          const BetaIdentityKnobs& knobs,
                                          const QuadratureConfig& cfg = {});

std::string to_string(BetaIdentity k);

}  // namespace barnesbeta
