#ifndef EDGE_OUTAGE_SIMULATE_HPP
#define EDGE_OUTAGE_SIMULATE_HPP

// Monte-Carlo balls-into-bins engine.
//
// Every trial t draws from its own stream seeded by a mixing function of
// (seed, t), so results depend only on (seed, trials, config) and never on
// how trials are split across workers.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <optional>
#include <span>
#include <thread>
#include <vector>

#include "edge_outage/error.hpp"
#include "edge_outage/model.hpp"
#include "edge_outage/numerics.hpp"

namespace edge_outage {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// SplitMix64 generator positioned at the start of trial `trial`'s stream.
class TrialRng {
 public:
  using result_type = std::uint64_t;

  TrialRng(std::uint64_t seed, std::uint64_t trial) : state_(mix64(mix64(seed) ^ mix64(~trial))) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  // Uniform in [0, bound), Lemire's multiply-and-reject.
  std::uint64_t below(std::uint64_t bound) {
    unsigned __int128 prod = static_cast<unsigned __int128>((*this)()) * bound;
    auto low = static_cast<std::uint64_t>(prod);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        prod = static_cast<unsigned __int128>((*this)()) * bound;
        low = static_cast<std::uint64_t>(prod);
      }
    }
    return static_cast<std::uint64_t>(prod >> 64);
  }

 private:
  std::uint64_t state_;
};

namespace detail {

inline void check_cdf(std::span<const double> cdf) {
  if (cdf.empty()) throw DomainError("sample_request: empty cdf");
  double prev = 0.0;
  for (double c : cdf) {
    if (!(c >= prev)) throw DomainError("sample_request: cdf must be non-decreasing and non-negative");
    prev = c;
  }
  if (std::abs(cdf.back() - 1.0) > 1e-12) throw DomainError("sample_request: cdf must end at 1");
}

// Smallest 1-based i with cdf[i] > u; the last index absorbs rounding slack.
inline std::int64_t sample_unchecked(std::span<const double> cdf, double u) {
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  if (it == cdf.end()) return static_cast<std::int64_t>(cdf.size());
  return static_cast<std::int64_t>(it - cdf.begin()) + 1;
}

}  // namespace detail

// Inverse-CDF draw of a 1-based file index.
inline std::int64_t sample_request(std::span<const double> cdf, double u) {
  detail::check_cdf(cdf);
  if (!(u >= 0.0 && u < 1.0)) throw DomainError("sample_request: u must lie in [0, 1)");
  return detail::sample_unchecked(cdf, u);
}

inline std::vector<double> cumulative(std::span<const double> pmf) {
  std::vector<double> cdf(pmf.size());
  CompensatedSum acc;
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    acc.add(pmf[i]);
    cdf[i] = acc.value();
  }
  return cdf;
}

enum class RapCacheMode { resample, fixed };

struct SimulationOptions {
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  RapCacheMode rap_cache = RapCacheMode::resample;
};

// Wilson score interval for a binomial proportion.
struct WilsonInterval {
  double low = 0.0;
  double high = 0.0;
  double half_width = 0.0;
};

inline WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.959963984540054) {
  if (trials == 0) throw DomainError("wilson_interval: zero trials");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return {std::max(0.0, centre - half), std::min(1.0, centre + half), half};
}

struct SimulationReport {
  std::uint64_t trials = 0;
  std::uint64_t outage_count = 0;
  double p_out_hat = 0.0;
  double ci_half_width_95 = 0.0;  // Wilson score
  std::uint64_t seed = 0;
  CacheScheme scheme = CacheScheme::rap;
  SystemConfig config;
  std::optional<double> alpha;
  RapCacheMode rap_cache = RapCacheMode::resample;
};

// Per-worker reusable state: two generation-stamped marker arrays avoid
// clearing anything between trials.
class TrialWorkspace {
 public:
  TrialWorkspace(const SystemConfig& config, CacheScheme scheme, std::optional<double> alpha)
      : config_(validate(config)),
        scheme_(scheme),
        cached_(static_cast<std::size_t>(config.library_size) + 1, 0),
        requested_(static_cast<std::size_t>(config.library_size) + 1, 0) {
    if (scheme == CacheScheme::mop) {
      if (!alpha) throw ConfigurationError("MoP simulation needs a Zipf alpha");
      cdf_ = cumulative(request_pmf(ZipfRequests{*alpha}, config.library_size));
      detail::check_cdf(cdf_);
    }
  }

  // true when the d requests need at most C distinct non-cached files.
  bool run_trial(TrialRng& rng, RapCacheMode rap_cache = RapCacheMode::resample) {
    const std::int64_t n = config_.library_size;
    const std::int64_t m = config_.cache_size;
    const std::int64_t c = config_.backhaul_capacity;
    const std::int64_t d = config_.num_requests;
    if (d <= c || m == n) return true;
    ++stamp_;

    const bool random_cache = scheme_ == CacheScheme::rap && rap_cache == RapCacheMode::resample;
    if (random_cache) {
      // Floyd's algorithm for a uniform M-subset of {1..N}.
      for (std::int64_t j = n - m + 1; j <= n; ++j) {
        const auto t = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(j))) + 1;
        auto& slot = cached_[static_cast<std::size_t>(t)];
        if (slot == stamp_) {
          cached_[static_cast<std::size_t>(j)] = stamp_;
        } else {
          slot = stamp_;
        }
      }
    }

    std::int64_t distinct = 0;
    for (std::int64_t u = 0; u < d; ++u) {
      const std::int64_t file =
          scheme_ == CacheScheme::rap
              ? static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(n))) + 1
              : detail::sample_unchecked(cdf_, rng.uniform());
      const bool in_cache = random_cache ? cached_[static_cast<std::size_t>(file)] == stamp_ : file <= m;
      if (in_cache) continue;
      auto& mark = requested_[static_cast<std::size_t>(file)];
      if (mark != stamp_) {
        mark = stamp_;
        if (++distinct > c) return false;
      }
    }
    return true;
  }

 private:
  SystemConfig config_;
  CacheScheme scheme_;
  std::vector<double> cdf_;
  std::vector<std::uint64_t> cached_;
  std::vector<std::uint64_t> requested_;
  std::uint64_t stamp_ = 0;
};

inline bool run_trial(const SystemConfig& config, CacheScheme scheme, std::optional<double> alpha, TrialRng& rng,
                      RapCacheMode rap_cache = RapCacheMode::resample) {
  TrialWorkspace ws(config, scheme, alpha);
  return ws.run_trial(rng, rap_cache);
}

namespace detail {

// Splits [0, trials) into contiguous chunks, one per worker, and returns the
// per-chunk results in chunk order.
template <typename ChunkFn>
auto run_chunked(std::uint64_t trials, unsigned workers, ChunkFn&& fn) {
  using Result = decltype(fn(std::uint64_t{}, std::uint64_t{}));
  workers = std::max(1U, workers);
  const auto chunks = static_cast<std::uint64_t>(std::min<std::uint64_t>(workers, std::max<std::uint64_t>(trials, 1)));
  std::vector<Result> results(chunks);
  std::vector<std::thread> threads;
  threads.reserve(chunks);
  std::vector<std::exception_ptr> errors(chunks);
  for (std::uint64_t i = 0; i < chunks; ++i) {
    const std::uint64_t begin = trials * i / chunks;
    const std::uint64_t end = trials * (i + 1) / chunks;
    auto body = [&, i, begin, end] {
      try {
        results[i] = fn(begin, end);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    };
    if (chunks == 1) {
      body();
    } else {
      threads.emplace_back(body);
    }
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

}  // namespace detail

inline SimulationReport monte_carlo_outage(const SystemConfig& config, CacheScheme scheme,
                                           std::optional<double> alpha, const SimulationOptions& options) {
  validate(config);
  if (options.trials < 1) throw DomainError("monte_carlo_outage: trials must be >= 1");
  if (scheme == CacheScheme::mop) {
    if (!alpha) throw ConfigurationError("MoP simulation needs a Zipf alpha");
    check_alpha(*alpha);
  }
  const auto counts = detail::run_chunked(options.trials, options.workers, [&](std::uint64_t begin, std::uint64_t end) {
    TrialWorkspace ws(config, scheme, alpha);
    std::uint64_t outages = 0;
    for (std::uint64_t t = begin; t < end; ++t) {
      TrialRng rng(options.seed, t);
      if (!ws.run_trial(rng, options.rap_cache)) ++outages;
    }
    return outages;
  });
  SimulationReport report;
  report.trials = options.trials;
  for (std::uint64_t c : counts) report.outage_count += c;
  report.p_out_hat = static_cast<double>(report.outage_count) / static_cast<double>(options.trials);
  report.ci_half_width_95 = wilson_interval(report.outage_count, options.trials).half_width;
  report.seed = options.seed;
  report.scheme = scheme;
  report.config = config;
  report.alpha = scheme == CacheScheme::mop ? alpha : std::nullopt;
  report.rap_cache = options.rap_cache;
  return report;
}

// Empirical distribution of non-empty bins after k throws with bin weights q.
inline OccupancyPmf monte_carlo_occupancy(std::span<const double> q, std::int64_t k, std::uint64_t trials,
                                          std::uint64_t seed, unsigned workers = 1) {
  if (q.empty()) throw DomainError("monte_carlo_occupancy: no bins");
  if (k < 0) throw DomainError("monte_carlo_occupancy: k must be >= 0");
  if (trials < 1) throw DomainError("monte_carlo_occupancy: trials must be >= 1");
  const std::vector<double> cdf = cumulative(q);
  detail::check_cdf(cdf);
  const auto m = static_cast<std::int64_t>(q.size());
  const auto zmax = static_cast<std::size_t>(std::min(k, m));

  const auto hists = detail::run_chunked(trials, workers, [&](std::uint64_t begin, std::uint64_t end) {
    std::vector<std::uint64_t> hist(zmax + 1, 0);
    std::vector<std::uint64_t> mark(static_cast<std::size_t>(m) + 1, 0);
    std::uint64_t stamp = 0;
    for (std::uint64_t t = begin; t < end; ++t) {
      TrialRng rng(seed, t);
      ++stamp;
      std::size_t occupied = 0;
      for (std::int64_t b = 0; b < k; ++b) {
        const auto bin = static_cast<std::size_t>(detail::sample_unchecked(cdf, rng.uniform()));
        if (mark[bin] != stamp) {
          mark[bin] = stamp;
          ++occupied;
        }
      }
      ++hist[occupied];
    }
    return hist;
  });

  OccupancyPmf out;
  out.k = k;
  out.method = OccupancyMethod::monte_carlo;
  out.probs.assign(zmax + 1, 0.0);
  for (std::size_t z = 0; z <= zmax; ++z) {
    std::uint64_t total = 0;
    for (const auto& h : hists) total += h[z];
    out.probs[z] = static_cast<double>(total) / static_cast<double>(trials);
  }
  return out;
}

}  // namespace edge_outage

#endif  // EDGE_OUTAGE_SIMULATE_HPP
