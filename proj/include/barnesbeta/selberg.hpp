#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "barnesbeta/mellin.hpp"
#include "barnesbeta/sampling.hpp"

namespace barnesbeta {

// (a1, a2, x1, x2) of the double-gamma master distribution.
struct MasterParams {
  double a1 = 1.0, a2 = 1.0;
  double x1 = 1.0, x2 = 1.0;
  void validate() const;
};

// (tau, lambda1, lambda2); tau > 1 for the distribution claims.
struct SelbergParams {
  double tau = 1.5;
  double lambda1 = 0.0, lambda2 = 0.0;
  void validate() const;
};

// The three inverse-beta factors of the master decomposition. A factor with
// coinciding x's (b-periods 0) degenerates to the point mass at 1 and is
// carried as an empty optional.
struct MasterFactors {
  double log_const = 0.0;   // log of the power-of-two prefactor
  double sigma2 = 0.0;      // lognormal variance
  std::optional<BarnesBetaParams> x1, x2, x3;
};

MasterFactors master_factors(const MasterParams& p);

// Mellin transform of the master distribution (four Gamma_2 ratios).
std::complex<double> master_mellin(const MasterParams& p, std::complex<double> q,
                                   const QuadratureConfig& cfg = {});

// Same value assembled from the lognormal and beta-inverse factor transforms.
std::complex<double> master_mellin_factored(const MasterParams& p, std::complex<double> q,
                                            const QuadratureConfig& cfg = {});

// Mellin transform of the Selberg integral distribution, Re(q) < tau.
std::complex<double> selberg_mellin(const SelbergParams& p, std::complex<double> q,
                                    const QuadratureConfig& cfg = {});

// Finite gamma-product moments; sign=+1 requires l < tau.
double selberg_moment(const SelbergParams& p, int l, int sign);

// Five-factor sampler (lognormal, three inverse betas, Frechet).
class SelbergSampler {
public:
  SelbergSampler(const SelbergParams& p, int K = 200, const QuadratureConfig& cfg = {});
  double draw(RngStream& rng) const;

private:
  SelbergParams p_;
  double log_const_;
  double sigma2_;
  std::optional<ProductBetaSampler> x1_, x2_, x3_;
};

std::vector<double> selberg_sample(const SelbergParams& p, RngStream& rng, std::size_t n,
                                   int K = 200);

enum class SelbergIdentity { infinite_product, funceq_tau, funceq_one, involution };

struct SelbergIdentityKnobs {
  std::vector<double> q_grid;
  int product_m_max = 2000;
};

struct SelbergIdentityReport {
  SelbergIdentity kind;
  double residual = 0.0;
  int points_tested = 0;
  std::string params_echo;
};

SelbergIdentityReport selberg_identity_residual(SelbergIdentity kind, const SelbergParams& p,
                                                const SelbergIdentityKnobs& knobs,
                                                const QuadratureConfig& cfg = {});

std::string to_string(SelbergIdentity k);

// Critical limit law: Mellin transform as a Barnes-G ratio, Re(q) < 1.
std::complex<double> critical_mellin(std::complex<double> q, const QuadratureConfig& cfg = {});

// Negative integer moments: the factorial product at l = 1, 2, ...
double critical_moment_neg(int l);

class CriticalSampler {
public:
  explicit CriticalSampler(int K = 200, const QuadratureConfig& cfg = {});
  double draw(RngStream& rng) const;

private:
  ProductBetaSampler x2_;
};

std::vector<double> critical_sample(RngStream& rng, std::size_t n, int K = 200);

// beta_{2,2}(delta) = beta_{2,2}(a=(1,1), b0=delta, b=(1/2,1/2)).
BarnesBetaParams beta22_delta_params(double delta);

enum class Beta22Route { barnes_g, eta, levy };

// E[beta_{2,2}(delta)^q] by three routes (Barnes-G ratio, the S-operator
// Mellin transform, the sech^2 Levy integral for real q > -delta).
double beta22_delta_mellin(double delta, double q, Beta22Route route,
                           const QuadratureConfig& cfg = {});

// log E[beta_{2,2}(delta)^q] from the sech^2 Levy representation.
double beta22_delta_log_mellin_levy(double delta, double q, const QuadratureConfig& cfg = {});

// nth cumulant of -log beta_{2,2}(delta) for 0 < delta < 1 from the
// xi-function series; ratio-test truncation, m_max cap.
double beta22_delta_cumulant(int n, double delta, int m_max = 200);

}  // namespace barnesbeta
