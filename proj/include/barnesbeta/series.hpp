#pragma once

#include <complex>
#include <vector>

#include "barnesbeta/errors.hpp"

namespace barnesbeta {

// Periods (M, a) of the kernel f(t) = t^M prod_j (1 - e^{-a_j t})^{-1}.
// M = 0 is the empty product, f(t) = 1.
struct GammaParams {
  int M = 0;
  std::vector<double> a;

  GammaParams() = default;
  GammaParams(std::vector<double> periods) : M(int(periods.size())), a(std::move(periods)) {
    for (double aj : a)
      if (!(aj > 0.0)) throw domain_error("GammaParams: periods must be strictly positive");
  }
};

// Truncated Taylor series sum_{k<=order} c_k t^k. Arithmetic truncates to
// the shorter operand.
template <class T>
struct BasicSeries {
  std::vector<T> c;  // order = c.size() - 1

  BasicSeries() : c(1, T(0)) {}
  explicit BasicSeries(int order) : c(size_t(order) + 1, T(0)) {}
  BasicSeries(std::initializer_list<T> init) : c(init) {}

  int order() const { return int(c.size()) - 1; }
  T operator[](int k) const { return c[size_t(k)]; }
  T& operator[](int k) { return c[size_t(k)]; }

  T eval(T t) const {  // Horner
    T v = c.back();
    for (int k = int(c.size()) - 2; k >= 0; --k) v = v * t + c[size_t(k)];
    return v;
  }
};

using PowerSeries = BasicSeries<double>;
using ComplexSeries = BasicSeries<std::complex<double>>;

// Exact Bernoulli number B_n (B_1 = -1/2 convention), n <= 32.
double bernoulli_number(int n);
constexpr int kBernoulliMax = 32;

// Taylor coefficients of t / (1 - e^{-a_j t}) up to `order`.
PowerSeries series_of_factor(double a_j, int order);

// Taylor coefficients of e^{-x t} up to `order`.
template <class T>
BasicSeries<T> series_of_exp(T x, int order) {
  BasicSeries<T> s(order);
  T term(1);
  s[0] = term;
  for (int k = 1; k <= order; ++k) {
    term *= -x / double(k);
    s[k] = term;
  }
  return s;
}

// Cauchy product truncated to min(order(u), order(v)).
template <class T, class U>
auto series_mul(const BasicSeries<T>& u, const BasicSeries<U>& v) {
  using R = decltype(T() * U());
  int n = std::min(u.order(), v.order());
  BasicSeries<R> w(n);
  for (int k = 0; k <= n; ++k) {
    R s(0);
    for (int j = 0; j <= k; ++j) s += R(u[j]) * R(v[k - j]);
    w[k] = s;
  }
  return w;
}

// Taylor coefficients B_k(x)/k! of f(t) e^{-x t}, k <= order.
PowerSeries bernoulli_coeff_series(const GammaParams& p, double x, int order);
ComplexSeries bernoulli_coeff_series(const GammaParams& p, std::complex<double> x, int order);

// Multiple Bernoulli polynomial B_{M,m}(x | a) = m! [t^m] f(t) e^{-x t}.
double bernoulli_poly(const GammaParams& p, int m, double x);
std::complex<double> bernoulli_poly(const GammaParams& p, int m, std::complex<double> x);

}  // namespace barnesbeta
