#ifndef EDGE_OUTAGE_MODEL_HPP
#define EDGE_OUTAGE_MODEL_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "edge_outage/error.hpp"
#include "edge_outage/numerics.hpp"

namespace edge_outage {

// Library of N files, cache of M files, backhaul able to fetch C distinct
// files per delivery phase, d concurrent requests.
struct SystemConfig {
  std::int64_t library_size = 1;       // N
  std::int64_t cache_size = 0;         // M
  std::int64_t backhaul_capacity = 0;  // C
  std::int64_t num_requests = 1;       // d

  std::int64_t noncached_files() const { return library_size - cache_size; }

  friend bool operator==(const SystemConfig&, const SystemConfig&) = default;
};

inline SystemConfig validate(const SystemConfig& config) {
  if (config.library_size < 1) throw ValidationError("library_size", "must be >= 1");
  if (config.cache_size < 0) throw ValidationError("cache_size", "must be >= 0");
  if (config.cache_size > config.library_size)
    throw ValidationError("cache_size", "must not exceed library_size");
  if (config.backhaul_capacity < 0) throw ValidationError("backhaul_capacity", "must be >= 0");
  if (config.num_requests < 1) throw ValidationError("num_requests", "must be >= 1");
  return config;
}

struct UniformRequests {};

// alpha = 0 is accepted and degenerates to uniform.
struct ZipfRequests {
  double alpha = 1.0;
};

using RequestModel = std::variant<UniformRequests, ZipfRequests>;

enum class CacheScheme { rap, mop };

inline std::string_view to_string(CacheScheme s) { return s == CacheScheme::rap ? "rap" : "mop"; }

inline CacheScheme parse_scheme(std::string_view text) {
  if (text == "rap") return CacheScheme::rap;
  if (text == "mop") return CacheScheme::mop;
  throw ValidationError("scheme", "expected 'rap' or 'mop', got '" + std::string(text) + "'");
}

inline void check_alpha(double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha))
    throw ValidationError("zipf_alpha", "must be a finite non-negative number");
}

namespace detail {

// sum_{i=first}^{last} i^{-alpha}, compensated.
inline double zipf_mass(std::int64_t first, std::int64_t last, double alpha) {
  CompensatedSum acc;
  for (std::int64_t i = first; i <= last; ++i) acc.add(std::pow(static_cast<double>(i), -alpha));
  return acc.value();
}

}  // namespace detail

// Per-file request probabilities indexed by popularity rank (entry 0 is rank 1).
inline std::vector<double> request_pmf(const RequestModel& model, std::int64_t library_size) {
  if (library_size < 1) throw ValidationError("library_size", "must be >= 1");
  const auto n = static_cast<std::size_t>(library_size);
  if (std::holds_alternative<UniformRequests>(model)) {
    return std::vector<double>(n, 1.0 / static_cast<double>(library_size));
  }
  const double alpha = std::get<ZipfRequests>(model).alpha;
  check_alpha(alpha);
  std::vector<double> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = std::pow(static_cast<double>(i + 1), -alpha);
  const double beta = compensated_sum(p);
  for (double& x : p) x /= beta;
  return p;
}

// Probability that a single request misses the cache.
inline double p_nc(CacheScheme scheme, const RequestModel& model, const SystemConfig& config) {
  validate(config);
  const std::int64_t n = config.library_size;
  const std::int64_t m = config.cache_size;
  if (scheme == CacheScheme::rap) {
    if (!std::holds_alternative<UniformRequests>(model))
      throw ConfigurationError("RaP placement is defined for uniform requests only");
    return static_cast<double>(n - m) / static_cast<double>(n);
  }
  if (!std::holds_alternative<ZipfRequests>(model))
    throw ConfigurationError("MoP placement is defined for Zipf requests only");
  if (m == n) return 0.0;
  const double alpha = std::get<ZipfRequests>(model).alpha;
  check_alpha(alpha);
  const double tail = detail::zipf_mass(m + 1, n, alpha);
  const double head = detail::zipf_mass(1, m, alpha);
  return tail / (head + tail);
}

// q_t: probability that a missed request lands on the t-th most popular
// non-cached file, t = 1..N-M (entry 0 is t = 1).
inline std::vector<double> conditional_noncached_weights(const SystemConfig& config, double alpha) {
  validate(config);
  check_alpha(alpha);
  const std::int64_t n = config.library_size;
  const std::int64_t m = config.cache_size;
  if (m >= n) throw DomainError("conditional_noncached_weights: every file is cached");
  std::vector<double> q(static_cast<std::size_t>(n - m));
  for (std::int64_t t = 1; t <= n - m; ++t)
    q[static_cast<std::size_t>(t - 1)] = std::pow(static_cast<double>(m + t), -alpha);
  const double tail = compensated_sum(q);
  for (double& x : q) x /= tail;
  return q;
}

}  // namespace edge_outage

#endif  // EDGE_OUTAGE_MODEL_HPP
