#pragma once

#include <complex>

namespace barnesbeta {

using cplx = std::complex<double>;

inline constexpr double euler_gamma = 0.5772156649015329;

// Principal-branch log of Euler's gamma for complex argument (Lanczos,
// reflection for Re(z) < 1/2). Relative accuracy ~1e-14 away from poles.
cplx log_gamma_euler(cplx z);

// Euler gamma itself; throws pole_error at non-positive integers.
cplx gamma_euler(cplx z);

// Exponential integral E1(z) for Re(z) > 0 (series for small |z|,
// continued fraction otherwise).
cplx exp_integral_e1(cplx z);

// Upper incomplete gamma Gamma(n, z) for integer n <= 1, Re(z) > 0.
cplx upper_gamma_int(int n, cplx z);

// log(1 + u) with a series for small |u|.
cplx log1p_c(cplx u);

// e^u - 1 assembled from expm1 of the real part (no cancellation near 0).
cplx expm1_c(cplx u);

// log Gamma(x + q) - log Gamma(x) without cancellation of two large values
// (Stirling differences once x is large).
cplx lgamma_diff(double x, cplx q);

double harmonic_number(int n);
double factorial(int n);
double binomial(int n, int k);  // 0 for k < 0 or k > n

}  // namespace barnesbeta
