#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "barnesbeta/mellin.hpp"

namespace barnesbeta {

// Counter-based stream: the n-th output is a pure function of
// (seed, stream_id, n), so parallel substreams reproduce bit-for-bit
// regardless of scheduling.
class RngStream {
public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next_u64();
  double uniform();      // [0, 1)
  double uniform_pos();  // (0, 1)
  double normal();       // standard normal, Box-Muller pair cached
  double exponential();  // Exp(1)
  double gamma2();       // density x e^{-x}
  std::uint64_t poisson(double lambda);

private:
  std::uint64_t base_;
  std::uint64_t counter_ = 0;
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

struct SampleStats {
  std::uint64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;  // sum of squared deviations (Welford)

  void add(double x);
  void merge(const SampleStats& o);
  double variance() const { return n > 1 ? m2 / double(n - 1) : 0.0; }
  double stderr_mean() const;
};

// Tabulated inverse CDF of the normalized Levy jump density on a log grid,
// monotone cubic interpolation, asymptotic tail inversion with rejection
// outside the covered quantile range.
class JumpTable {
public:
  JumpTable(const BarnesBetaParams& p, const QuadratureConfig& cfg = {});

  double total_mass() const { return lambda_; }
  double sample(RngStream& rng) const;

private:
  BarnesBetaParams params_;
  double lambda_ = 0.0;
  int power_ = 1;  // N - M: low-end density exponent is t^{power-1}
  double u_lo_ = 0.0, u_hi_ = 1.0;
  double c_low_ = 0.0;   // low-tail bound constant prod(b)/prod(a)
  double bound_hi_ = 0.0;
  std::vector<double> t_, cdf_, slope_;

  double interp(double u) const;
  double sample_low(RngStream& rng) const;
  double sample_high(RngStream& rng) const;
};

// Compound-Poisson sampler for beta_{M,N}(a,b) with M < N: Poisson(lambda)
// jumps from the Levy density, beta = exp(-sum), exact atom at 1.
class CompoundBetaSampler {
public:
  CompoundBetaSampler(const BarnesBetaParams& p, const QuadratureConfig& cfg = {});
  double draw(RngStream& rng) const;
  double mass() const { return table_.total_mass(); }

private:
  JumpTable table_;
  double exp_neg_lambda_;
};

// Truncated-product sampler for the absolutely continuous case M = N:
// beta = prod_{k<=K} beta_{M-1,N}(a-hat, b0 + k a_i) with an optional
// deterministic tail-mean correction on -log beta.
class ProductBetaSampler {
public:
  ProductBetaSampler(const BarnesBetaParams& p, int period_index = -1, int K = 200,
                     bool tail_correction = true, const QuadratureConfig& cfg = {});
  double draw(RngStream& rng) const;
  // the deterministic shift applied to -log beta (0 when correction is off)
  double tail_mean_correction() const { return correct_ ? tail_mean_ : 0.0; }
  // raw truncation bias in E[-log beta] left behind when correction is off
  bool tail_warning() const { return !correct_ && tail_mean_ > 1e-3; }
  double component_mass(int k) const { return components_[size_t(k)].mass(); }
  int truncation() const { return K_; }

private:
  int K_;
  bool correct_;
  double tail_mean_ = 0.0;
  std::vector<CompoundBetaSampler> components_;
};

// Elementary factor laws of the decompositions.
double sample_lognormal(RngStream& rng, double sigma2);
double sample_frechet(RngStream& rng, double tau);   // density tau y^{-1-tau} e^{-y^{-tau}}
double sample_frechet_inv_sq(RngStream& rng);        // density y^{-2} e^{-1/y}
double sample_pareto23(RngStream& rng);              // density 2/y^3, y > 1
double sample_beta00(RngStream& rng, double b0);     // density b0 x^{b0-1} on (0,1)
double sample_gamma2(RngStream& rng);                // density x e^{-x}
double sample_exponential(RngStream& rng, double rate);

// Monte-Carlo estimate of E[X^q].
SampleStats mc_mellin(const std::function<double(RngStream&)>& sampler, double q,
                      std::uint64_t n, RngStream& rng);

// Deterministic parallel MC over a per-draw value: n split over a fixed
// number of substreams (stream ids base..base+chunks-1), merged in stream
// order. Thread count is capped by BARNESBETA_THREADS (default: hardware
// concurrency); the result does not depend on the thread count.
SampleStats mc_parallel(const std::function<double(RngStream&)>& value, std::uint64_t n,
                        std::uint64_t seed, std::uint64_t stream_base, int chunks = 16);

int worker_thread_count();

}  // namespace barnesbeta
