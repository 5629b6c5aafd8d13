#include "hwstaff/mmn_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <future>
#include <queue>
#include <string>
#include <thread>

#include "hwstaff/errors.hpp"

namespace hwstaff::mmn {

namespace {

enum class EventKind : int { Arrival = 0, Departure = 1 };

struct Event {
  double time;
  EventKind kind;
  std::uint64_t sequence;
};

// Min-heap order: earlier time first, arrivals before departures at equal
// times, then insertion order.
struct LaterEvent {
  bool operator()(const Event& x, const Event& y) const {
    if (x.time != y.time) return x.time > y.time;
    if (x.kind != y.kind) return x.kind > y.kind;
    return x.sequence > y.sequence;
  }
};

}  // namespace

double birth_death_wait_prob(std::int64_t n, double a) {
  if (n < 1) throw DomainError("birth_death_wait_prob: requires n >= 1");
  if (!std::isfinite(a) || !(a > 0.0)) throw DomainError("birth_death_wait_prob: requires a > 0");
  const double rho = a / static_cast<double>(n);
  if (!(rho < 1.0)) {
    throw InstabilityError("birth_death_wait_prob: stationary distribution exists only for a < n");
  }

  // Unnormalized probabilities relative to pi_n, walking down from k = n:
  // pi_{k} / pi_{k+1} = (k+1) / a.
  constexpr double kRescale = 1e280;
  const double log_rescale = std::log(kRescale);
  double term = 1.0;
  double below = 0.0;  // sum_{k < n} pi_k / pi_n, times exp(-log_scale)
  double log_scale = 0.0;
  for (std::int64_t k = n - 1; k >= 0; --k) {
    term *= static_cast<double>(k + 1) / a;
    below += term;
    if (below > kRescale) {
      below /= kRescale;
      term /= kRescale;
      log_scale += log_rescale;
    }
  }
  // Tail sum_{j >= 0} pi_{n+j} / pi_n = 1 / (1 - rho).
  // P(wait) = tail / (below + tail) = 1 / (1 + below (1 - rho)).
  return 1.0 / (1.0 + std::exp(std::log(below) + log_scale + std::log1p(-rho)));
}

std::int64_t default_warmup(std::int64_t n, double rho) {
  // Shave rounding noise so that e.g. rho = 4/5 gives exactly 250 for n = 5.
  const double raw = 10.0 * static_cast<double>(n) / (1.0 - rho);
  return static_cast<std::int64_t>(std::ceil(raw * (1.0 - 1e-12)));
}

void SimConfig::validate() const {
  if (n < 1) throw ConfigError("simulate: requires n >= 1 servers");
  if (!std::isfinite(lambda) || !(lambda > 0.0)) throw ConfigError("simulate: requires lambda > 0");
  if (!std::isfinite(mu) || !(mu > 0.0)) throw ConfigError("simulate: requires mu > 0");
  if (!(rho() < 1.0)) {
    throw ConfigError("simulate: unstable system, lambda / (n mu) = " + std::to_string(rho()) +
                      " must be < 1");
  }
  if (warmup_arrivals < 0) throw ConfigError("simulate: warmup arrivals must be >= 0");
  if (batches < 10) throw ConfigError("simulate: requires at least 10 batches");
  if (measured_arrivals < batches) {
    throw ConfigError("simulate: measured arrivals must be at least the batch count");
  }
}

SimConfig SimConfig::with_default_warmup(std::int64_t n, double lambda, double mu,
                                         std::int64_t measured_arrivals, std::uint64_t seed) {
  SimConfig cfg;
  cfg.n = n;
  cfg.lambda = lambda;
  cfg.mu = mu;
  cfg.measured_arrivals = measured_arrivals;
  cfg.seed = seed;
  if (n >= 1 && lambda > 0.0 && mu > 0.0 && cfg.rho() < 1.0) {
    cfg.warmup_arrivals = default_warmup(n, cfg.rho());
  }
  return cfg;
}

double t_quantile_975(int dof) {
  if (dof < 1) throw DomainError("t_quantile_975: requires dof >= 1");
  const double z = 1.959963984540054;
  const double z2 = z * z;
  const double g1 = (z2 + 1.0) * z / 4.0;
  const double g2 = ((5.0 * z2 + 16.0) * z2 + 3.0) * z / 96.0;
  const double g3 = (((3.0 * z2 + 19.0) * z2 + 17.0) * z2 - 15.0) * z / 384.0;
  const double g4 = ((((79.0 * z2 + 776.0) * z2 + 1482.0) * z2 - 1920.0) * z2 - 945.0) * z / 92160.0;
  const double v = static_cast<double>(dof);
  return z + g1 / v + g2 / (v * v) + g3 / (v * v * v) + g4 / (v * v * v * v);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream)
    : engine_(splitmix64(splitmix64(seed) ^ (stream * 0xd1b54a32d192ed03ULL))) {}

double RandomStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomStream::exponential(double rate) { return -std::log1p(-uniform()) / rate; }

SimEstimate simulate_mmn(const SimConfig& cfg) {
  cfg.validate();

  RandomStream arrivals(cfg.seed, 0);
  RandomStream services(cfg.seed, 1);

  const std::int64_t batch_size = cfg.measured_arrivals / cfg.batches;
  const std::int64_t measured = batch_size * cfg.batches;
  const std::int64_t total_arrivals = cfg.warmup_arrivals + measured;
  std::vector<std::int64_t> waited(static_cast<std::size_t>(cfg.batches), 0);

  std::priority_queue<Event, std::vector<Event>, LaterEvent> events;
  std::uint64_t sequence = 0;
  std::int64_t busy = 0;
  std::int64_t queued = 0;
  std::int64_t arrived = 0;

  events.push({arrivals.exponential(cfg.lambda), EventKind::Arrival, sequence++});
  while (!events.empty()) {
    const Event ev = events.top();
    events.pop();

    if (ev.kind == EventKind::Arrival) {
      const std::int64_t index = arrived++;
      if (index >= cfg.warmup_arrivals && busy == cfg.n) {
        ++waited[static_cast<std::size_t>((index - cfg.warmup_arrivals) / batch_size)];
      }
      if (busy < cfg.n) {
        ++busy;
        events.push({ev.time + services.exponential(cfg.mu), EventKind::Departure, sequence++});
      } else {
        ++queued;
      }
      if (arrived == total_arrivals) break;
      events.push({ev.time + arrivals.exponential(cfg.lambda), EventKind::Arrival, sequence++});
    } else if (queued > 0) {
      --queued;
      events.push({ev.time + services.exponential(cfg.mu), EventKind::Departure, sequence++});
    } else {
      --busy;
    }
  }

  const double size = static_cast<double>(batch_size);
  double mean = 0.0;
  for (std::int64_t w : waited) mean += static_cast<double>(w) / size;
  mean /= static_cast<double>(cfg.batches);
  double ss = 0.0;
  for (std::int64_t w : waited) {
    const double d = static_cast<double>(w) / size - mean;
    ss += d * d;
  }
  const double variance = ss / static_cast<double>(cfg.batches - 1);

  SimEstimate est;
  est.p_wait = mean;
  est.batches = cfg.batches;
  est.ci_halfwidth =
      t_quantile_975(cfg.batches - 1) * std::sqrt(variance / static_cast<double>(cfg.batches));
  return est;
}

std::vector<SimEstimate> simulate_replications(const SimConfig& cfg, int replications) {
  cfg.validate();
  if (replications < 1) throw ConfigError("simulate_replications: requires replications >= 1");

  const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::vector<SimEstimate> out(static_cast<std::size_t>(replications));
  std::deque<std::future<void>> inflight;
  for (int k = 0; k < replications; ++k) {
    SimConfig rep = cfg;
    rep.seed = splitmix64(cfg.seed + static_cast<std::uint64_t>(k));
    auto* slot = &out[static_cast<std::size_t>(k)];
    inflight.push_back(std::async(std::launch::async, [rep, slot] { *slot = simulate_mmn(rep); }));
    if (inflight.size() >= workers) {
      inflight.front().get();
      inflight.pop_front();
    }
  }
  for (auto& f : inflight) f.get();
  return out;
}

}  // namespace hwstaff::mmn
