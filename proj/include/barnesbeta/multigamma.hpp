#pragma once

#include <complex>

#include "barnesbeta/quadrature.hpp"
#include "barnesbeta/series.hpp"

namespace barnesbeta {

struct LogGammaValue {
  std::complex<double> value{0.0, 0.0};
  double est_error = 0.0;
};

// log Gamma_M(w | a) for Re(w) > 0 via the Malmsten-type integral: the
// integrand is the exponential kernel with the polynomial subtractions that
// make it regular at t = 0. M = 0 returns -log w exactly.
LogGammaValue log_gamma(const GammaParams& p, std::complex<double> w,
                        const QuadratureConfig& cfg = {});

// Closed form a^{w/a - 1/2} (2 pi)^{-1/2} Gamma(w/a) and its log.
std::complex<double> gamma1_closed(double a, std::complex<double> w);
std::complex<double> log_gamma1_closed(double a, std::complex<double> w);

// Dispatcher used by the analytic layers: exact closed forms for M <= 1,
// memoized quadrature otherwise.
LogGammaValue log_multi_gamma(const GammaParams& p, std::complex<double> w,
                              const QuadratureConfig& cfg = {});

// Barnes G for Re(z) > 0; arguments right of the base strip are reduced
// through G(z+1) = Gamma(z) G(z).
std::complex<double> barnes_g(std::complex<double> z, const QuadratureConfig& cfg = {});
std::complex<double> log_barnes_g(std::complex<double> z, const QuadratureConfig& cfg = {});

// Barnes zeta partial box sum with Euler-Maclaurin tail estimate. Throws
// accuracy_error when the tail bound exceeds cfg.rel_tol relative to the sum.
std::complex<double> zeta_direct(const GammaParams& p, std::complex<double> s,
                                 std::complex<double> w, int n_max,
                                 const QuadratureConfig& cfg = {});

}  // namespace barnesbeta
