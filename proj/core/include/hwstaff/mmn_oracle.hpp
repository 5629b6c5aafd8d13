#pragma once

// Model-level ground truth for the M/M/n waiting probability: an exact
// birth-death stationary solve and a seeded discrete-event simulation.

#include <cstdint>
#include <random>
#include <vector>

namespace hwstaff::mmn {

/// Sum_{k >= n} pi_k of the M/M/n birth-death chain, with pi_k ~ a^k/k!
/// for k <= n and a geometric tail beyond n summed in closed form.
double birth_death_wait_prob(std::int64_t n, double a);

struct SimConfig {
  std::int64_t n = 1;
  double lambda = 0.5;
  double mu = 1.0;
  std::int64_t warmup_arrivals = 0;
  std::int64_t measured_arrivals = 1'000'000;
  std::uint64_t seed = 1;
  int batches = 32;

  double offered_load() const { return lambda / mu; }
  double rho() const { return lambda / (static_cast<double>(n) * mu); }

  /// Throws ConfigError on any invariant violation (instability included).
  void validate() const;

  /// Config with the default warmup of 10 n / (1 - rho) arrivals.
  static SimConfig with_default_warmup(std::int64_t n, double lambda, double mu,
                                       std::int64_t measured_arrivals, std::uint64_t seed);
};

struct SimEstimate {
  double p_wait = 0.0;
  double ci_halfwidth = 0.0;  // 95%, batch means
  int batches = 0;

  friend bool operator==(const SimEstimate&, const SimEstimate&) = default;
};

/// Warmup length 10 n / (1 - rho), rounded up.
std::int64_t default_warmup(std::int64_t n, double rho);

/// Student-t 0.975 quantile for dof degrees of freedom (Cornish-Fisher
/// expansion around the normal quantile; < 1e-4 absolute error for dof >= 9).
double t_quantile_975(int dof);

/// Random stream: std::mt19937_64 seeded through SplitMix64(seed, stream).
/// Uniforms take the top 53 bits; exponentials use -log1p(-u) / rate. Both
/// are bit-reproducible on any conforming platform.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream);

  double uniform();
  double exponential(double rate);

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Event-driven M/M/n run. The fraction of measured arrivals that find all
/// n servers busy estimates the waiting probability (Poisson arrivals see
/// time averages).
SimEstimate simulate_mmn(const SimConfig& cfg);

/// Independent replications; replication k runs with seed
/// splitmix64(cfg.seed + k). Replications may run concurrently; results are
/// returned in replication order.
std::vector<SimEstimate> simulate_replications(const SimConfig& cfg, int replications);

}  // namespace hwstaff::mmn
