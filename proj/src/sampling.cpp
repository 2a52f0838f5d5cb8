#include "barnesbeta/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <atomic>
#include <future>
#include <thread>

#include "barnesbeta/errors.hpp"

namespace barnesbeta {

namespace {

constexpr double kTwoPi = 6.283185307179586;
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id) {
  base_ = mix64(seed + kGolden) ^ mix64(stream_id * 0xD1342543DE82EF95ull + 0x632BE59BD9B4E019ull);
}

std::uint64_t RngStream::next_u64() { return mix64(base_ + (++counter_) * kGolden); }

double RngStream::uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

double RngStream::uniform_pos() { return (double(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

double RngStream::normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_normal_;
  }
  double u1 = uniform_pos(), u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  cached_normal_ = r * std::sin(kTwoPi * u2);
  has_cached_ = true;
  return r * std::cos(kTwoPi * u2);
}

double RngStream::exponential() { return -std::log(uniform_pos()); }

double RngStream::gamma2() { return -std::log(uniform_pos() * uniform_pos()); }

std::uint64_t RngStream::poisson(double lambda) {
  if (!(lambda >= 0.0)) throw domain_error("poisson: lambda must be non-negative");
  if (lambda == 0.0) return 0;
  if (lambda < 30.0) {
    double L = std::exp(-lambda), p = uniform_pos();
    std::uint64_t k = 0;
    while (p > L) {
      p *= uniform_pos();
      ++k;
    }
    return k;
  }
  // PTRS transformed rejection (Hormann); exact for large lambda
  double slam = std::sqrt(lambda), loglam = std::log(lambda);
  double bpt = 0.931 + 2.53 * slam;
  double apt = -0.059 + 0.02483 * bpt;
  double inv_alpha = 1.1239 + 1.1328 / (bpt - 3.4);
  double vr = 0.9277 - 3.6224 / (bpt - 2.0);
  while (true) {
    double u = uniform() - 0.5;
    double v = uniform_pos();
    double us = 0.5 - std::abs(u);
    double k = std::floor((2.0 * apt / us + bpt) * u + lambda + 0.43);
    if (us >= 0.07 && v <= vr) return std::uint64_t(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v * inv_alpha / (apt / (us * us) + bpt)) <=
        k * loglam - lambda - std::lgamma(k + 1.0))
      return std::uint64_t(k);
  }
}

void SampleStats::add(double x) {
  ++n;
  double d = x - mean;
  mean += d / double(n);
  m2 += d * (x - mean);
}

void SampleStats::merge(const SampleStats& o) {
  if (o.n == 0) return;
  if (n == 0) {
    *this = o;
    return;
  }
  double d = o.mean - mean;
  std::uint64_t tot = n + o.n;
  m2 += o.m2 + d * d * double(n) * double(o.n) / double(tot);
  mean += d * double(o.n) / double(tot);
  n = tot;
}

double SampleStats::stderr_mean() const {
  return n > 1 ? std::sqrt(variance() / double(n)) : 0.0;
}

JumpTable::JumpTable(const BarnesBetaParams& p, const QuadratureConfig& cfg) : params_(p) {
  if (!(p.M < p.N)) throw domain_error("JumpTable: compound-Poisson case requires M < N");
  power_ = p.N - p.M;
  lambda_ = levy_mass(p, cfg);

  // window [t_min, t_max] carrying all but ~1e-10 of the mass
  double t_max = (cfg.split_point + 8.0) / std::min(1.0, p.b0);
  while (levy_density(params_, t_max) * (t_max / 2.0) > 1e-11 * lambda_) t_max *= 1.3;
  double t_min = 1e-3;
  while (levy_density(params_, t_min) * t_min / power_ > 1e-11 * lambda_) t_min *= 0.5;

  // strict bound for rho(t)/t^{power-1} on (0, t_min]: each b factor peaks
  // at 0, each inverted a factor at t_min
  c_low_ = 1.0;
  for (double bj : p.b) c_low_ *= bj;
  for (double ai : p.a) c_low_ *= t_min / (-std::expm1(-ai * t_min));

  const int cells = 4096;
  t_.resize(cells + 1);
  cdf_.assign(cells + 1, 0.0);
  double lr = std::log(t_max / t_min) / cells;
  for (int i = 0; i <= cells; ++i) t_[size_t(i)] = t_min * std::exp(lr * i);
  // 4-point Gauss-Legendre per cell
  static const double gx[2] = {0.3399810435848563, 0.8611363115940526};
  static const double gw[2] = {0.6521451548625461, 0.3478548451374538};
  double acc = levy_density(params_, t_min) * t_min / power_;  // power-law head below t_min
  double head = acc;
  cdf_[0] = acc;
  for (int i = 0; i < cells; ++i) {
    double a = t_[size_t(i)], b = t_[size_t(i + 1)];
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (int g = 0; g < 2; ++g)
      s += gw[g] * (levy_density(params_, mid - half * gx[g]) +
                    levy_density(params_, mid + half * gx[g]));
    acc += s * half;
    cdf_[size_t(i + 1)] = acc;
  }
  // normalize so the cdf reaches 1 at the top; the fallback regions get
  // exactly the probability the grid does not carry, so the sampled law
  // matches the density also in the far tails
  double beyond = levy_density(params_, t_max) / p.b0;  // exponential-tail estimate
  double total = acc + beyond;
  for (double& c : cdf_) c /= total;
  u_lo_ = head / total;
  u_hi_ = acc / total;

  // Fritsch-Carlson monotone slopes for t as a function of u
  int n = cells + 1;
  slope_.assign(size_t(n), 0.0);
  std::vector<double> d(size_t(n - 1));
  for (int i = 0; i < n - 1; ++i) {
    double du = cdf_[size_t(i + 1)] - cdf_[size_t(i)];
    d[size_t(i)] = du > 0 ? (t_[size_t(i + 1)] - t_[size_t(i)]) / du : 0.0;
  }
  slope_[0] = d[0];
  slope_[size_t(n - 1)] = d[size_t(n - 2)];
  for (int i = 1; i < n - 1; ++i) {
    if (d[size_t(i - 1)] * d[size_t(i)] <= 0.0)
      slope_[size_t(i)] = 0.0;
    else
      slope_[size_t(i)] = 2.0 / (1.0 / d[size_t(i - 1)] + 1.0 / d[size_t(i)]);
  }
  bound_hi_ = 1.0;
  for (double ai : p.a) bound_hi_ /= -std::expm1(-ai * t_max);
}

double JumpTable::interp(double u) const {
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  size_t i = size_t(std::max<std::ptrdiff_t>(1, it - cdf_.begin())) - 1;
  if (i >= cdf_.size() - 1) i = cdf_.size() - 2;
  double h = cdf_[i + 1] - cdf_[i];
  if (h <= 0.0) return t_[i];
  double s = (u - cdf_[i]) / h;
  double h00 = (1 + 2 * s) * (1 - s) * (1 - s), h10 = s * (1 - s) * (1 - s);
  double h01 = s * s * (3 - 2 * s), h11 = s * s * (s - 1);
  return h00 * t_[i] + h10 * h * slope_[i] + h01 * t_[i + 1] + h11 * h * slope_[i + 1];
}

double JumpTable::sample_low(RngStream& rng) const {
  double t_lo = t_.front();
  for (int tries = 0; tries < 256; ++tries) {
    double t = t_lo * std::pow(rng.uniform_pos(), 1.0 / power_);
    double accept = levy_density(params_, t) / (c_low_ * std::pow(t, power_ - 1));
    if (rng.uniform() <= accept) return t;
  }
  return t_lo;  // acceptance is ~1; unreachable in practice
}

double JumpTable::sample_high(RngStream& rng) const {
  double t_hi = t_.back();
  for (int tries = 0; tries < 256; ++tries) {
    double t = t_hi + rng.exponential() / params_.b0;
    double ratio = 1.0;
    for (double bj : params_.b) ratio *= -std::expm1(-bj * t);
    for (double ai : params_.a) ratio /= -std::expm1(-ai * t);
    ratio *= t_hi / t;
    if (rng.uniform() <= ratio / bound_hi_) return t;
  }
  return t_hi;
}

double JumpTable::sample(RngStream& rng) const {
  double u = rng.uniform_pos();
  if (u < u_lo_) return sample_low(rng);
  if (u > u_hi_) return sample_high(rng);
  return interp(u);
}

CompoundBetaSampler::CompoundBetaSampler(const BarnesBetaParams& p, const QuadratureConfig& cfg)
    : table_(p, cfg), exp_neg_lambda_(std::exp(-table_.total_mass())) {}

double CompoundBetaSampler::draw(RngStream& rng) const {
  // inline Knuth using the precomputed e^{-lambda}
  std::uint64_t jumps = 0;
  if (table_.total_mass() < 30.0) {
    double pr = rng.uniform_pos();
    while (pr > exp_neg_lambda_) {
      pr *= rng.uniform_pos();
      ++jumps;
    }
  } else {
    jumps = rng.poisson(table_.total_mass());
  }
  if (jumps == 0) return 1.0;
  double total = 0.0;
  for (std::uint64_t i = 0; i < jumps; ++i) total += table_.sample(rng);
  return std::exp(-total);
}

ProductBetaSampler::ProductBetaSampler(const BarnesBetaParams& p, int period_index, int K,
                                       bool tail_correction, const QuadratureConfig& cfg)
    : K_(K), correct_(tail_correction) {
  if (p.M != p.N || p.M < 1)
    throw domain_error("ProductBetaSampler: product construction is the M = N case");
  if (period_index < 0) {
    period_index = 0;
    for (int i = 1; i < p.M; ++i)
      if (p.a[size_t(i)] > p.a[size_t(period_index)]) period_index = i;
  }
  double ai = p.a[size_t(period_index)];
  BarnesBetaParams hat = p;
  hat.a.erase(hat.a.begin() + period_index);
  hat.M = p.M - 1;
  components_.reserve(size_t(K) + 1);
  for (int k = 0; k <= K; ++k) {
    BarnesBetaParams comp = hat;
    comp.b0 = p.b0 + k * ai;
    components_.emplace_back(comp, cfg);
  }
  {
    // sum_{k>K} E[-log beta_k] as one integral: the geometric tail of the
    // shifted Levy means
    double T = (cfg.split_point + 10.0) / std::min(1.0, p.b0);
    auto f = [&](double t) -> std::complex<double> {
      double v = std::exp(-(p.b0 + (K + 1) * ai) * t) / (-std::expm1(-ai * t));
      for (double bj : p.b) v *= -std::expm1(-bj * t);
      for (size_t m = 0; m < hat.a.size(); ++m) v /= -std::expm1(-hat.a[m] * t);
      return {v, 0.0};
    };
    tail_mean_ = integrate_decaying(f, 0.0, T, 0.25 * cfg.abs_tol, cfg.max_refinements)
                     .value.real();
  }
}

double ProductBetaSampler::draw(RngStream& rng) const {
  double log_total = correct_ ? -tail_mean_ : 0.0;
  for (const auto& comp : components_) {
    double b = comp.draw(rng);
    if (b != 1.0) log_total += std::log(b);
  }
  return std::exp(log_total);
}

double sample_lognormal(RngStream& rng, double sigma2) {
  if (!(sigma2 > 0.0)) throw domain_error("sample_lognormal: sigma^2 must be positive");
  return std::exp(std::sqrt(sigma2) * rng.normal());
}

double sample_frechet(RngStream& rng, double tau) {
  if (!(tau > 0.0)) throw domain_error("sample_frechet: tau must be positive");
  return std::pow(rng.exponential(), -1.0 / tau);
}

double sample_frechet_inv_sq(RngStream& rng) { return 1.0 / rng.exponential(); }

double sample_pareto23(RngStream& rng) { return 1.0 / std::sqrt(rng.uniform_pos()); }

double sample_beta00(RngStream& rng, double b0) {
  if (!(b0 > 0.0)) throw domain_error("sample_beta00: b0 must be positive");
  return std::pow(rng.uniform_pos(), 1.0 / b0);
}

double sample_gamma2(RngStream& rng) { return rng.gamma2(); }

double sample_exponential(RngStream& rng, double rate) {
  if (!(rate > 0.0)) throw domain_error("sample_exponential: rate must be positive");
  return rng.exponential() / rate;
}

SampleStats mc_mellin(const std::function<double(RngStream&)>& sampler, double q,
                      std::uint64_t n, RngStream& rng) {
  SampleStats s;
  for (std::uint64_t i = 0; i < n; ++i) s.add(std::pow(sampler(rng), q));
  return s;
}

int worker_thread_count() {
  if (const char* env = std::getenv("BARNESBETA_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? int(hw) : 1;
}

SampleStats mc_parallel(const std::function<double(RngStream&)>& value, std::uint64_t n,
                        std::uint64_t seed, std::uint64_t stream_base, int chunks) {
  if (chunks < 1) chunks = 1;
  std::vector<SampleStats> parts(static_cast<size_t>(chunks));
  int threads = std::min(worker_thread_count(), chunks);
  std::uint64_t per = n / std::uint64_t(chunks), extra = n % std::uint64_t(chunks);
  auto run_chunk = [&](int c) {
    RngStream rng(seed, stream_base + std::uint64_t(c));
    std::uint64_t cnt = per + (std::uint64_t(c) < extra ? 1 : 0);
    SampleStats s;
    for (std::uint64_t i = 0; i < cnt; ++i) s.add(value(rng));
    parts[size_t(c)] = s;
  };
  if (threads <= 1) {
    for (int c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::vector<std::future<void>> futs;
    std::atomic<int> next{0};
    for (int t = 0; t < threads; ++t)
      futs.push_back(std::async(std::launch::async, [&]() {
        int c;
        while ((c = next.fetch_add(1)) < chunks) run_chunk(c);
      }));
    for (auto& f : futs) f.get();
  }
  SampleStats out;
  for (const auto& s : parts) out.merge(s);
  return out;
}

}  // namespace barnesbeta
