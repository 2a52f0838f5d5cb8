#include "barnesbeta/series.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <numeric>

#include "barnesbeta/specfun.hpp"

namespace barnesbeta {

namespace {

using int128 = __int128;

int128 gcd128(int128 a, int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

struct Rat {
  int128 num = 0, den = 1;
  void reduce() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    int128 g = gcd128(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  Rat& operator+=(const Rat& o) {
    num = num * o.den + o.num * den;
    den *= o.den;
    reduce();
    return *this;
  }
  Rat operator*(const Rat& o) const {
    Rat r{num * o.num, den * o.den};
    r.reduce();
    return r;
  }
  double value() const { return double(num) / double(den); }
};

// B_n from the recurrence sum_{k<=n} C(n+1,k) B_k = 0, exact rationals.
std::array<double, kBernoulliMax + 1> make_bernoulli_table() {
  std::array<Rat, kBernoulliMax + 1> b;
  b[0] = Rat{1, 1};
  for (int n = 1; n <= kBernoulliMax; ++n) {
    Rat acc{0, 1};
    // binomial C(n+1, k) exactly
    int128 binom = 1;
    for (int k = 0; k < n; ++k) {
      acc += Rat{binom, 1} * b[size_t(k)];
      binom = binom * (n + 1 - k) / (k + 1);
    }
    // last binomial value is C(n+1, n) = n+1
    b[size_t(n)] = Rat{-acc.num, acc.den * int128(n + 1)};
    b[size_t(n)].reduce();
  }
  std::array<double, kBernoulliMax + 1> out{};
  for (int n = 0; n <= kBernoulliMax; ++n) out[size_t(n)] = b[size_t(n)].value();
  return out;
}

const std::array<double, kBernoulliMax + 1>& bernoulli_table() {
  static const auto table = make_bernoulli_table();
  return table;
}

template <class T>
BasicSeries<T> coeff_series_impl(const GammaParams& p, T x, int order) {
  BasicSeries<T> s = series_of_exp<T>(x, order);
  for (double aj : p.a) {
    PowerSeries f = series_of_factor(aj, order);
    s = series_mul(s, f);
  }
  return s;
}

}  // namespace

double bernoulli_number(int n) {
  if (n < 0 || n > kBernoulliMax)
    throw capacity_error("bernoulli_number: index outside exact-rational cache [0,32]");
  return bernoulli_table()[size_t(n)];
}

PowerSeries series_of_factor(double a_j, int order) {
  if (!(a_j > 0.0)) throw domain_error("series_of_factor: period must be positive");
  if (order < 0) throw domain_error("series_of_factor: order must be >= 0");
  // t/(1 - e^{-a t}) = (1/a) sum_k B_k (-a t)^k / k! with B_1 = -1/2,
  // i.e. coefficients (1/a) (-1)^k B_k a^k / k!.
  PowerSeries s(order);
  double apow = 1.0 / a_j, kfac = 1.0;
  for (int k = 0; k <= order; ++k) {
    if (k > 0) {
      apow *= -a_j;
      kfac *= k;
    }
    s[k] = bernoulli_number(k) * apow / kfac;
  }
  return s;
}

PowerSeries bernoulli_coeff_series(const GammaParams& p, double x, int order) {
  return coeff_series_impl<double>(p, x, order);
}

ComplexSeries bernoulli_coeff_series(const GammaParams& p, std::complex<double> x, int order) {
  return coeff_series_impl<std::complex<double>>(p, x, order);
}

double bernoulli_poly(const GammaParams& p, int m, double x) {
  if (m < 0) throw domain_error("bernoulli_poly: m must be >= 0");
  auto s = bernoulli_coeff_series(p, x, m + 4);  // guard terms
  return s[m] * factorial(m);
}

std::complex<double> bernoulli_poly(const GammaParams& p, int m, std::complex<double> x) {
  if (m < 0) throw domain_error("bernoulli_poly: m must be >= 0");
  auto s = bernoulli_coeff_series(p, x, m + 4);
  return s[m] * factorial(m);
}

}  // namespace barnesbeta
