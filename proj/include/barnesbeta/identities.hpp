#pragma once

#include <complex>
#include <string>
#include <vector>

#include "barnesbeta/multigamma.hpp"

namespace barnesbeta {

enum class IdentityKind { functional_eq, scaling, multiplication, shintani_gamma };

struct IdentityReport {
  IdentityKind kind;
  double residual = 0.0;   // max relative deviation over sampled points
  int points_tested = 0;
  std::string params_echo;
};

// Shintani correction polynomial Psi_{M+1}(x, y | a), closed form built
// from the Bernoulli data of the M-period system; H_n - log y weights.
std::complex<double> psi(const GammaParams& p, std::complex<double> x, std::complex<double> y);

// Independent integral route for Psi (test oracle).
std::complex<double> psi_integral(const GammaParams& p, std::complex<double> x,
                                  std::complex<double> y, const QuadratureConfig& cfg = {});

// chi_{M+1}(x, y | a): regularized integral with the 1/(e^{yt}-1) kernel.
std::complex<double> chi(const GammaParams& p, std::complex<double> x, std::complex<double> y,
                         const QuadratureConfig& cfg = {});

// P_{M+1}(w, y | a): the polynomial part of log Gamma_{M+1} - chi - log Gamma_M.
std::complex<double> p_poly(const GammaParams& p, std::complex<double> w, std::complex<double> y,
                            const QuadratureConfig& cfg = {});

// phi_{M+1}(w, x | a, a_next) = P(w, a_next) + chi(x, a_next)
//   + gamma (B_{M,M+1}(w) - B_{M,M+1}(x)) / (a_next (M+1)!)
std::complex<double> phi(const GammaParams& p, std::complex<double> w, std::complex<double> x,
                         double a_next, const QuadratureConfig& cfg = {});

// log of the truncated Shintani product prod_{k=1..K} of Gamma_M ratios
// with Psi corrections.
std::complex<double> shintani_log_product(const GammaParams& p, std::complex<double> w,
                                          std::complex<double> x, double a_next, int K,
                                          const QuadratureConfig& cfg = {});

struct IdentityKnobs {
  std::vector<std::complex<double>> w_grid;
  double kappa = 2.0;      // scaling
  int k_mult = 2;          // multiplication
  int period_index = 0;    // functional equation
  double x_anchor = 1.0;   // shintani
  double a_next = 1.0;     // shintani
  int shintani_k0 = 64;    // initial truncation, doubled adaptively
  bool use_quadrature_gamma1 = false;  // evaluate M=1 factors by quadrature
};

IdentityReport identity_residual(IdentityKind kind, const GammaParams& p,
                                 const IdentityKnobs& knobs, const QuadratureConfig& cfg = {});

std::string to_string(IdentityKind k);

}  // namespace barnesbeta
