#include "barnesbeta/multigamma.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "barnesbeta/errors.hpp"
#include "barnesbeta/specfun.hpp"

namespace barnesbeta {

namespace {

using cd = std::complex<double>;

// prod_j t / (1 - e^{-a_j t}), stable down to t -> 0
double kernel_factor(const std::vector<double>& a, double t) {
  double f = 1.0;
  for (double aj : a) f *= t / (-std::expm1(-aj * t));
  return f;
}

// crossover below which the integrand is evaluated by its Taylor series;
// keeps both the cancellation ratio and the series convergence under control
double series_crossover(double a_max, double wmag) {
  double ts = 0.5;
  ts = std::min(ts, 1.9 / (a_max + 1e-300));          // ~0.3 of the 2*pi/a radius
  ts = std::min(ts, 1.5 / (1.0 + wmag));              // cancellation guard
  return ts;
}

// multi-index scan of prod (1 - e^{-a_j t})^{-1} = sum_k e^{-(k.a) t},
// collecting offsets k.a <= cut (k = 0 included)
void collect_offsets(const std::vector<double>& a, double cut, size_t cap,
                     std::vector<double>& out) {
  out.assign(1, 0.0);
  for (double aj : a) {
    size_t n = out.size();
    for (size_t i = 0; i < n; ++i) {
      double base = out[i];
      for (double off = base + aj; off <= cut; off += aj) {
        out.push_back(off);
        if (out.size() > cap) return;
      }
    }
  }
}

struct CacheKey {
  int M;
  std::vector<long long> q;
  bool operator==(const CacheKey& o) const { return M == o.M && q == o.q; }
};

struct CacheKeyHash {
  size_t operator()(const CacheKey& k) const {
    size_t h = std::hash<int>()(k.M);
    for (long long v : k.q) h = h * 1000003u + std::hash<long long>()(v);
    return h;
  }
};

long long quantize(double x) {
  if (std::abs(x) < 9.0e3) return llround(x * 1e14);
  long long bits;
  std::memcpy(&bits, &x, sizeof bits);
  return bits;
}

}  // namespace

std::complex<double> log_gamma1_closed(double a, cd w) {
  if (!(a > 0.0)) throw domain_error("gamma1_closed: period must be positive");
  constexpr double log_sqrt_two_pi = 0.91893853320467274178;
  return (w / a - 0.5) * std::log(a) - log_sqrt_two_pi + log_gamma_euler(w / a);
}

std::complex<double> gamma1_closed(double a, cd w) {
  return std::exp(log_gamma1_closed(a, w));
}

LogGammaValue log_gamma(const GammaParams& p, cd w, const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(w.real() > 0.0)) throw domain_error("log_gamma: requires Re(w) > 0");
  if (p.M == 0) return {-std::log(w), 0.0};

  const int M = p.M;
  const double a_max = *std::max_element(p.a.begin(), p.a.end());
  const double T = cfg.split_point / std::min(w.real(), 1.0);

  // Taylor data c_k = B_k(w)/k! of f(t) e^{-wt}
  const int order = std::min(kBernoulliMax, M + 27);
  if (order < M + 6) throw capacity_error("log_gamma: M too large for the series cache");
  ComplexSeries bc = bernoulli_coeff_series(p, w, order);

  // integrand Taylor coefficients g_j, j >= 0:
  //   g_j = c_{j+M+1} - c_M (-1)^{j+1} / (j+1)!
  const int glen = order - M;
  std::vector<cd> g(static_cast<size_t>(glen));
  {
    double sign = -1.0, fac = 1.0;  // (-1)^{j+1} / (j+1)!
    for (int j = 0; j < glen; ++j) {
      fac *= double(j + 1);
      g[size_t(j)] = bc[j + M + 1] - bc[M] * (sign / fac);
      sign = -sign;
    }
  }

  double ts = std::min(series_crossover(a_max, std::abs(w)), T);
  auto series_remainder = [&](double t) {
    double tp = std::pow(t, glen - 2);
    return (std::abs(g[size_t(glen - 2)]) + std::abs(g[size_t(glen - 1)]) * t) * tp * 3.0;
  };
  while (ts > 1e-8 && series_remainder(ts) * ts > 0.05 * cfg.abs_tol) ts *= 0.5;

  // [0, ts]: exact termwise integration of the series
  cd head = 0.0;
  {
    double tp = ts;
    for (int j = 0; j < glen; ++j) {
      head += g[size_t(j)] * tp / double(j + 1);
      tp *= ts;
    }
  }
  double err = series_remainder(ts) * ts;

  // [ts, T]: direct evaluation (polynomial subtractions are small relative
  // to the exponential term only below ts, so cancellation stays mild here)
  auto integrand = [&](double t) -> cd {
    cd bracket = std::exp(-w * t) * kernel_factor(p.a, t);
    double tp = 1.0;
    for (int k = 0; k < M; ++k) {
      bracket -= bc[k] * tp;
      tp *= t;
    }
    bracket -= bc[M] * tp * std::exp(-t);
    return bracket / (tp * t);  // tp == t^M here
  };
  QuadResult mid = integrate_decaying(integrand, ts, T, 0.25 * cfg.abs_tol,
                                      cfg.max_refinements);
  err += mid.est_error;

  // [T, inf): analytic tail. e^{-wt} f(t)/t^{M+1} = sum_k e^{-(w+k.a)t}/t.
  cd tail = 0.0;
  {
    std::vector<double> offsets;
    double cut = 38.0 / T;
    collect_offsets(p.a, cut, size_t(cfg.tail_index_cutoff), offsets);
    if (offsets.size() > size_t(cfg.tail_index_cutoff)) {
      err += std::exp(-w.real() * T);  // enumeration saturated; count the slack
      offsets.resize(size_t(cfg.tail_index_cutoff));
    }
    for (double off : offsets) tail += exp_integral_e1((w + off) * T);
    err += std::exp(-(w.real() + cut) * T) / (w.real() * T) * double(offsets.size());
    double tp = std::pow(T, -M);
    for (int k = 0; k < M; ++k) {
      tail -= bc[k] * tp / double(M - k);
      tp *= T;
    }
    tail -= bc[M] * exp_integral_e1(cd(T));
  }

  LogGammaValue out{head + mid.value + tail, err};
  double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(out.value));
  if (!(err <= 50.0 * tol) || !std::isfinite(out.value.real()) ||
      !std::isfinite(out.value.imag()))
    throw accuracy_error("log_gamma: quadrature did not converge", out.value, err);
  return out;
}

LogGammaValue log_multi_gamma(const GammaParams& p, cd w, const QuadratureConfig& cfg) {
  if (p.M == 0) return {-std::log(w), 0.0};
  if (p.M == 1) return {log_gamma1_closed(p.a[0], w), 1e-15};

  static std::mutex mu;
  static std::unordered_map<CacheKey, LogGammaValue, CacheKeyHash> cache;

  CacheKey key{p.M, {}};
  key.q.reserve(p.a.size() + 2);
  for (double aj : p.a) key.q.push_back(quantize(aj));
  key.q.push_back(quantize(w.real()));
  key.q.push_back(quantize(w.imag()));
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  LogGammaValue v = log_gamma(p, w, cfg);
  {
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(std::move(key), v);
  }
  return v;
}

std::complex<double> log_barnes_g(cd z, const QuadratureConfig& cfg) {
  if (!(z.real() > 0.0)) throw domain_error("barnes_g: requires Re(z) > 0");
  cd shift = 0.0;
  while (z.real() > 1.75) {
    z -= 1.0;
    shift += log_gamma_euler(z);
  }
  static const GammaParams ones{{1.0, 1.0}};
  constexpr double log_two_pi = 1.8378770664093454836;
  cd l2_base = log_multi_gamma(ones, cd(1.0), cfg).value;
  cd l2 = log_multi_gamma(ones, z, cfg).value;
  return shift + (z - 1.0) * 0.5 * log_two_pi + l2_base - l2;
}

std::complex<double> barnes_g(cd z, const QuadratureConfig& cfg) {
  return std::exp(log_barnes_g(z, cfg));
}

namespace {

// Barnes zeta over the remaining dimensions `dims` of `a`, full sums, via
// Euler-Maclaurin with base length n. Power s passed as complex.
cd barnes_zeta_full(const std::vector<double>& a, size_t dims, cd s, cd w, int n) {
  if (dims == 0) return std::pow(w, -s);
  double am = a[dims - 1];
  cd sum = 0.0;
  for (int k = 0; k < n; ++k) sum += barnes_zeta_full(a, dims - 1, s, w + double(k) * am, n);
  cd v = w + double(n) * am;
  sum += barnes_zeta_full(a, dims - 1, s - 1.0, v, n) / (am * (s - 1.0));
  sum += 0.5 * barnes_zeta_full(a, dims - 1, s, v, n);
  sum += s * am / 12.0 * barnes_zeta_full(a, dims - 1, s + 1.0, v, n);
  sum -= s * (s + 1.0) * (s + 2.0) * am * am * am / 720.0 *
         barnes_zeta_full(a, dims - 1, s + 3.0, v, n);
  return sum;
}

}  // namespace

std::complex<double> zeta_direct(const GammaParams& p, cd s, cd w, int n_max,
                                 const QuadratureConfig& cfg) {
  if (!(w.real() > 0.0)) throw domain_error("zeta_direct: requires Re(w) > 0");
  if (p.M == 0) return std::pow(w, -s);
  if (!(s.real() > double(p.M) + 1.0))
    throw domain_error("zeta_direct: requires Re(s) > M + 1");
  if (n_max < 10) throw domain_error("zeta_direct: n_max must be >= 10");

  const int M = p.M;
  // box partial sum over [0, n_max]^M
  std::vector<int> idx(size_t(M), 0);
  cd box = 0.0;
  bool real_fast = (s.imag() == 0.0 && w.imag() == 0.0);
  while (true) {
    double off = 0.0;
    for (int j = 0; j < M; ++j) off += idx[size_t(j)] * p.a[size_t(j)];
    if (real_fast)
      box += std::pow(w.real() + off, -s.real());
    else
      box += std::pow(w + off, -s);
    int j = 0;
    while (j < M && ++idx[size_t(j)] > n_max) idx[size_t(j++)] = 0;
    if (j == M) break;
  }

  // complement of the box as disjoint strips {k_j > n_max, k_i <= n_max for
  // i < j, k_i free for i > j}; each strip tail via Euler-Maclaurin
  cd tail = 0.0;
  double tail_bound = 0.0;
  const int em_base = 24;
  for (int j = 0; j < M; ++j) {
    std::vector<double> free_dims(p.a.begin() + j + 1, p.a.end());
    double aj = p.a[size_t(j)];
    // iterate the bounded prefix dims i < j
    std::vector<int> pre(size_t(j), 0);
    while (true) {
      double off = 0.0;
      for (int i = 0; i < j; ++i) off += pre[size_t(i)] * p.a[size_t(i)];
      // sum_{k_j > n_max} Z_free(w + off + k_j a_j); EM in k_j
      cd base = w + off + double(n_max + 1) * aj;
      auto zf = [&](cd ss, cd ww) { return barnes_zeta_full(free_dims, free_dims.size(), ss, ww, em_base); };
      cd t0 = zf(s - 1.0, base) / (aj * (s - 1.0));
      cd t1 = 0.5 * zf(s, base);
      cd t2 = s * aj / 12.0 * zf(s + 1.0, base);
      cd t3 = -s * (s + 1.0) * (s + 2.0) * aj * aj * aj / 720.0 * zf(s + 3.0, base);
      tail += t0 + t1 + t2 + t3;
      tail_bound += std::abs(t3);
      int i = 0;
      while (i < j && ++pre[size_t(i)] > n_max) pre[size_t(i++)] = 0;
      if (i == j) break;
    }
  }

  cd value = box + tail;
  if (tail_bound > cfg.rel_tol * std::abs(value))
    throw accuracy_error("zeta_direct: tail bound exceeds tolerance, raise n_max", value,
                         tail_bound);
  return value;
}

}  // namespace barnesbeta
