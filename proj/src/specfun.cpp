#include "barnesbeta/specfun.hpp"

#include <cmath>
#include <limits>

#include "barnesbeta/errors.hpp"

namespace barnesbeta {

namespace {

// Lanczos coefficients, g = 607/128, 15 terms (same set used by GSL and
// Boost.Math for double precision).
constexpr double kLanczosG = 4.7421875;
constexpr double kLanczos[15] = {
    0.99999999999999709182,      57.156235665862923517,
    -59.597960355475491248,      14.136097974741747174,
    -0.49191381609762019978,     0.33994649984811888699e-4,
    0.46523628927048575665e-4,   -0.98374475304879564677e-4,
    0.15808870322491248884e-3,   -0.21026444172410488319e-3,
    0.21743961811521264320e-3,   -0.16431810653676389022e-3,
    0.84418223983852743293e-4,   -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

constexpr double kLogSqrtTwoPi = 0.91893853320467274178;

cplx log_gamma_core(cplx z) {
  // valid for Re(z) >= 0.5
  cplx sum = kLanczos[0];
  for (int k = 1; k < 15; ++k) sum += kLanczos[k] / (z + cplx(k - 1));
  cplx t = z + (kLanczosG - 0.5);
  return (z - 0.5) * std::log(t) - t + kLogSqrtTwoPi + std::log(sum);
}

bool is_nonpositive_integer(cplx z) {
  if (z.imag() != 0.0) return false;
  double r = z.real();
  return r <= 0.0 && r == std::floor(r);
}

}  // namespace

cplx log_gamma_euler(cplx z) {
  if (is_nonpositive_integer(z)) throw pole_error("log_gamma_euler: pole at non-positive integer");
  if (z.real() >= 0.5) return log_gamma_core(z);
  // reflection: log Gamma(z) = log(pi / sin(pi z)) - log Gamma(1 - z)
  const double pi = 3.14159265358979323846;
  // log(sin(pi z)) computed to avoid overflow for large |Im z|
  cplx logsin;
  if (std::abs(z.imag()) < 20.0) {
    logsin = std::log(std::sin(pi * z));
  } else {
    cplx iz = cplx(0, 1) * pi * z;
    // sin w = (e^{iw} - e^{-iw}) / 2i
    if (z.imag() > 0)
      logsin = -iz - std::log(cplx(0, 2)) + std::log(std::exp(2.0 * iz) - 1.0);
    else
      logsin = iz - std::log(cplx(0, -2)) + std::log(1.0 - std::exp(-2.0 * iz));
  }
  return std::log(cplx(pi)) - logsin - log_gamma_core(1.0 - z);
}

cplx gamma_euler(cplx z) { return std::exp(log_gamma_euler(z)); }

cplx exp_integral_e1(cplx z) {
  if (z.real() <= 0.0 && z.imag() == 0.0)
    throw domain_error("exp_integral_e1: requires Re(z) > 0 or Im(z) != 0");
  if (std::abs(z) < 1.5) {
    // E1(z) = -gamma - log z + sum_{k>=1} (-1)^{k+1} z^k / (k k!)
    cplx sum = 0.0, term = 1.0;
    for (int k = 1; k < 60; ++k) {
      term *= -z / double(k);
      cplx add = -term / double(k);
      sum += add;
      if (std::abs(add) < 1e-18 * (std::abs(sum) + 1e-300)) break;
    }
    return -euler_gamma - std::log(z) + sum;
  }
  // even form of the continued fraction, modified Lentz
  cplx b = z + 1.0;
  cplx c = 1e300;
  cplx d = 1.0 / b;
  cplx h = d;
  for (int i = 1; i < 300; ++i) {
    double a = -double(i) * double(i);
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    cplx del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return h * std::exp(-z);
}

cplx upper_gamma_int(int n, cplx z) {
  if (n > 1) throw domain_error("upper_gamma_int: only n <= 1 supported");
  cplx g1 = std::exp(-z);  // Gamma(1, z)
  if (n == 1) return g1;
  cplx g = exp_integral_e1(z);  // Gamma(0, z)
  // downward: Gamma(s-1, z) = (Gamma(s, z) - z^{s-1} e^{-z}) / (s - 1)
  for (int s = 0; s > n; --s) {
    g = (g - std::pow(z, double(s - 1)) * g1) / double(s - 1);
  }
  return g;
}


cplx expm1_c(cplx u) {
  if (u.imag() == 0.0) return cplx(std::expm1(u.real()), 0.0);
  double ex = std::exp(u.real());
  double half = std::sin(0.5 * u.imag());
  return cplx(std::expm1(u.real()) - 2.0 * ex * half * half, ex * std::sin(u.imag()));
}

cplx log1p_c(cplx u) {
  if (std::abs(u) < 1e-4) return u * (1.0 + u * (-0.5 + u * (1.0 / 3.0 - 0.25 * u)));
  return std::log(1.0 + u);
}

cplx lgamma_diff(double x, cplx q) {
  if (x < 32.0 || std::abs(q) > 0.5 * x) return log_gamma_euler(x + q) - log_gamma_euler(cplx(x));
  // Stirling difference: the leading terms are grouped so nothing large
  // cancels, the B_{2m} corrections enter as explicit power differences
  cplx h = (x - 0.5) * log1p_c(q / x) + q * std::log(x + q) - q;
  static const double c[4] = {1.0 / 12.0, -1.0 / 360.0, 1.0 / 1260.0, -1.0 / 1680.0};
  cplx a = 1.0 / (x + q), b = cplx(1.0 / x);
  cplx p1 = -q / (x * (x + q));
  cplx a2 = a * a, b2 = b * b;
  cplx p3 = p1 * (a2 + a * b + b2);
  cplx p5 = p1 * (a2 * a2 + a2 * a * b + a2 * b2 + a * b * b2 + b2 * b2);
  cplx p7 = p1 * (a2 * a2 * a2 + a2 * a2 * a * b + a2 * a2 * b2 + a2 * a * b * b2 +
                  a2 * b2 * b2 + a * b2 * b2 * b + b2 * b2 * b2);
  h += c[0] * p1 + c[1] * p3 + c[2] * p5 + c[3] * p7;
  return h;
}

double harmonic_number(int n) {
  double h = 0.0;
  for (int k = 1; k <= n; ++k) h += 1.0 / k;
  return h;
}

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double b = 1.0;
  for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
  return b;
}

}  // namespace barnesbeta
