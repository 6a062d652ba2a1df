#ifndef EDGE_OUTAGE_ORACLE_HPP
#define EDGE_OUTAGE_ORACLE_HPP

// Slow exact references for small instances. Nothing here samples.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "edge_outage/analytic.hpp"
#include "edge_outage/error.hpp"
#include "edge_outage/model.hpp"
#include "edge_outage/numerics.hpp"

namespace edge_outage {

struct OracleBudget {
  std::int64_t max_subset_bins = 20;
  std::int64_t max_enumeration = 10'000'000;
};

// Exact P(Z = z) for k throws into bins with probabilities q, by
// inclusion-exclusion over subsets U of bins:
//   P(Z = z) = sum_{|T|=z} sum_{U subset T} (-1)^{z-|U|} q(U)^k
//            = sum_r (-1)^{z-r} C(m-r, z-r) A_r,   A_r = sum_{|U|=r} q(U)^k.
// Accumulated in 50-digit binary floating point.
inline OccupancyPmf exact_occupancy_weighted(std::span<const double> q, std::int64_t k,
                                             const OracleBudget& budget = {}) {
  using Wide = boost::multiprecision::cpp_bin_float_50;
  const auto m = static_cast<std::int64_t>(q.size());
  if (m > budget.max_subset_bins)
    throw BudgetError("exact_occupancy_weighted: " + std::to_string(m) + " bins exceeds budget of " +
                      std::to_string(budget.max_subset_bins));
  if (k < 0) throw DomainError("exact_occupancy_weighted: k must be >= 0");
  if (m == 0 && k > 0) throw DomainError("exact_occupancy_weighted: no bins");

  const auto k_exp = static_cast<unsigned>(k);
  std::vector<Wide> by_size(static_cast<std::size_t>(m) + 1, Wide(0));
  const std::uint64_t subsets = std::uint64_t{1} << m;
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    Wide s = 0;
    int r = 0;
    for (std::int64_t t = 0; t < m; ++t) {
      if (mask & (std::uint64_t{1} << t)) {
        s += Wide(q[static_cast<std::size_t>(t)]);
        ++r;
      }
    }
    by_size[static_cast<std::size_t>(r)] += boost::multiprecision::pow(s, k_exp);
  }
  // pow(0, 0) = 1 makes the k = 0 case come out as a point mass at z = 0.

  std::vector<Wide> binom_row(static_cast<std::size_t>(m) + 1);
  const std::int64_t zmax = std::min(k, m);
  OccupancyPmf out;
  out.k = k;
  out.method = OccupancyMethod::oracle;
  out.probs.assign(static_cast<std::size_t>(zmax) + 1, 0.0);
  for (std::int64_t z = 0; z <= zmax; ++z) {
    Wide acc = 0;
    for (std::int64_t r = 0; r <= z; ++r) {
      // C(m-r, z-r)
      Wide c = 1;
      for (std::int64_t i = 1; i <= z - r; ++i) c = c * Wide(m - r - (z - r) + i) / Wide(i);
      const Wide term = c * by_size[static_cast<std::size_t>(r)];
      if ((z - r) % 2 == 0) {
        acc += term;
      } else {
        acc -= term;
      }
    }
    out.probs[static_cast<std::size_t>(z)] = acc.convert_to<double>();
  }
  return out;
}

// Weighted distribution of Z (distinct non-cached files requested) over all
// N^d request tuples with cache {1..M}. Entry z of the returned vector is P(Z = z).
// RaP uses uniform weights and a fixed cache, which is exact by symmetry.
inline std::vector<double> brute_force_noncached_distribution(const SystemConfig& config, CacheScheme scheme,
                                                              std::optional<double> alpha,
                                                              const OracleBudget& budget = {}) {
  validate(config);
  const std::int64_t n = config.library_size;
  const std::int64_t m = config.cache_size;
  const std::int64_t d = config.num_requests;

  double tuples = 1.0;
  for (std::int64_t i = 0; i < d; ++i) tuples *= static_cast<double>(n);
  if (tuples > static_cast<double>(budget.max_enumeration))
    throw BudgetError("brute_force_outage: N^d = " + std::to_string(tuples) + " exceeds budget of " +
                      std::to_string(budget.max_enumeration));

  std::vector<double> pmf;
  if (scheme == CacheScheme::rap) {
    pmf = request_pmf(UniformRequests{}, n);
  } else {
    if (!alpha) throw ConfigurationError("brute_force_outage: MoP needs a Zipf alpha");
    pmf = request_pmf(ZipfRequests{*alpha}, n);
  }

  const auto zmax = static_cast<std::size_t>(std::min(d, n - m));
  std::vector<CompensatedSum> by_z(zmax + 1);
  std::vector<std::int64_t> tuple(static_cast<std::size_t>(d), 0);  // 0-based file indices
  std::vector<std::int64_t> seen(static_cast<std::size_t>(n), -1);
  std::int64_t stamp = 0;
  // Lexicographic odometer over {0..N-1}^d.
  while (true) {
    double weight = 1.0;
    std::size_t distinct = 0;
    for (std::int64_t f : tuple) {
      weight *= pmf[static_cast<std::size_t>(f)];
      if (f >= m && seen[static_cast<std::size_t>(f)] != stamp) {
        seen[static_cast<std::size_t>(f)] = stamp;
        ++distinct;
      }
    }
    by_z[distinct].add(weight);
    ++stamp;

    std::int64_t pos = d - 1;
    while (pos >= 0 && tuple[static_cast<std::size_t>(pos)] == n - 1) {
      tuple[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++tuple[static_cast<std::size_t>(pos)];
  }
  std::vector<double> out(zmax + 1);
  for (std::size_t z = 0; z <= zmax; ++z) out[z] = by_z[z].value();
  return out;
}

// P(Z > C) by full enumeration of request tuples.
inline OutageResult brute_force_outage(const SystemConfig& config, CacheScheme scheme,
                                       std::optional<double> alpha = std::nullopt,
                                       const OracleBudget& budget = {}) {
  const auto dist = brute_force_noncached_distribution(config, scheme, alpha, budget);
  CompensatedSum outage;
  CompensatedSum success;
  for (std::size_t z = 0; z < dist.size(); ++z) {
    if (static_cast<std::int64_t>(z) > config.backhaul_capacity) {
      outage.add(dist[z]);
    } else {
      success.add(dist[z]);
    }
  }
  OutageResult result;
  result.method = OutageMethod::generic;
  result.p_out = std::clamp(outage.value(), 0.0, 1.0);
  result.diagnostics.terms_k = config.num_requests + 1;
  result.diagnostics.success_mass = success.value();
  return result;
}

}  // namespace edge_outage

#endif  // EDGE_OUTAGE_ORACLE_HPP
