#ifndef EDGE_OUTAGE_ANALYTIC_HPP
#define EDGE_OUTAGE_ANALYTIC_HPP

// Outage probability of a cache-enabled relay.
//
// K ~ Bin(d, P_nc) users miss the cache; given K = k, Z is the number of
// distinct non-cached files among those k requests. The relay succeeds iff
// Z <= C, so
//
//   P_out = 1 - [ sum_{k<=C} p_K(k) + sum_{k>C} p_K(k) sum_{z=1}^{C} p_Z(z|k) ].
//
// RaP (uniform requests, random cache) has an exact p_Z; MoP (Zipf requests,
// top-M cache) uses a Gaussian approximation of the weighted occupancy law.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "edge_outage/error.hpp"
#include "edge_outage/model.hpp"
#include "edge_outage/numerics.hpp"

namespace edge_outage {

enum class OutageMethod { rap_exact, mop_gaussian, generic };

inline std::string_view to_string(OutageMethod m) {
  switch (m) {
    case OutageMethod::rap_exact: return "rap-exact";
    case OutageMethod::mop_gaussian: return "mop-gaussian";
    case OutageMethod::generic: return "generic";
  }
  return "unknown";
}

struct OutageDiagnostics {
  std::int64_t terms_k = 0;            // k values that contributed to the success mass
  double success_mass = 1.0;           // P_succ before clamping
  std::optional<double> min_sigma_sq;  // smallest Gaussian variance seen (MoP)
  std::optional<double> raw_p_out;     // set when 1 - success_mass left [0,1] by > 1e-9
};

struct OutageResult {
  double p_out = 0.0;
  OutageMethod method = OutageMethod::generic;
  OutageDiagnostics diagnostics;
};

struct GaussianOccupancyParams {
  double mu_k = 0.0;
  double sigma_sq_k = 0.0;
};

// Below this variance the Gaussian collapses to a point mass at the mean.
inline constexpr double kMinGaussianVariance = 1e-12;

inline LogProb log_p_K(std::int64_t k, std::int64_t d, double pnc) {
  if (d < 1) throw DomainError("p_K: d must be >= 1");
  if (k < 0 || k > d) throw DomainError("p_K: k outside [0, d]");
  if (!(pnc >= 0.0 && pnc <= 1.0)) throw DomainError("p_K: pnc outside [0, 1]");
  const std::int64_t hits = d - k;
  if ((k > 0 && pnc == 0.0) || (hits > 0 && pnc == 1.0)) return LogProb::zero();
  double lp = log_binomial(static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(k));
  if (k > 0) lp += static_cast<double>(k) * std::log(pnc);
  if (hits > 0) lp += static_cast<double>(hits) * std::log1p(-pnc);
  return LogProb(lp);
}

// Binomial pmf of the number of cache misses.
inline double p_K(std::int64_t k, std::int64_t d, double pnc) { return log_p_K(k, d, pnc).prob(); }

// Exact p_Z(z|k) for RaP: k balls uniformly over the N-M non-cached files.
inline OccupancyPmf p_Z_rap(std::int64_t k, const SystemConfig& config) {
  validate(config);
  if (k < 0) throw DomainError("p_Z_rap: k must be >= 0");
  if (k == 0) return OccupancyPmf{0, {1.0}, OccupancyMethod::exact_dp, std::nullopt};
  if (config.noncached_files() == 0) throw DomainError("p_Z_rap: no non-cached files but k > 0");
  return occupancy_uniform_pmf(static_cast<std::uint64_t>(config.noncached_files()),
                               static_cast<std::uint64_t>(k));
}

// Mean and variance of the number of non-empty bins after k throws with bin
// probabilities q, in the Poisson-limit form
//   mu    = m - sum e^{-k q_t}
//   var   = sum e^{-k q_t}(1 - e^{-k q_t}) - (1/k) (sum k e^{-k q_t} q_t)^2.
// The variance is returned raw and may be <= 0 in degenerate regimes.
inline GaussianOccupancyParams gaussian_params(std::int64_t k, std::span<const double> q) {
  if (k < 1) throw DomainError("gaussian_params: k must be >= 1");
  if (q.empty()) throw DomainError("gaussian_params: empty weight vector");
  const double kd = static_cast<double>(k);
  CompensatedSum empty_mass;
  CompensatedSum var_first;
  CompensatedSum cov_sum;
  for (double qt : q) {
    const double e = std::exp(-kd * qt);
    empty_mass.add(e);
    var_first.add(e * -std::expm1(-kd * qt));
    cov_sum.add(kd * e * qt);
  }
  const double cov = cov_sum.value();
  GaussianOccupancyParams out;
  out.mu_k = static_cast<double>(q.size()) - empty_mass.value();
  out.sigma_sq_k = var_first.value() - cov * cov / kd;
  return out;
}

// Gaussian density evaluated at z = 1..min(k, m) where m = q.size().
// Not renormalized unless asked.
inline OccupancyPmf p_Z_gaussian(std::int64_t k, std::span<const double> q, bool renormalize = false) {
  const GaussianOccupancyParams g = gaussian_params(k, q);
  const std::int64_t zmax = std::min<std::int64_t>(k, static_cast<std::int64_t>(q.size()));
  OccupancyPmf out;
  out.k = k;
  out.method = OccupancyMethod::gaussian_approx;
  out.sigma_sq = g.sigma_sq_k;
  out.probs.assign(static_cast<std::size_t>(zmax) + 1, 0.0);
  if (g.sigma_sq_k < kMinGaussianVariance) {
    const auto at = std::clamp<std::int64_t>(std::llround(g.mu_k), 1, zmax);
    out.probs[static_cast<std::size_t>(at)] = 1.0;
    return out;
  }
  const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi * g.sigma_sq_k);
  for (std::int64_t z = 1; z <= zmax; ++z) {
    const double dz = static_cast<double>(z) - g.mu_k;
    out.probs[static_cast<std::size_t>(z)] = norm * std::exp(-dz * dz / (2.0 * g.sigma_sq_k));
  }
  if (renormalize) {
    const double total = compensated_sum(out.probs);
    if (total > 0.0)
      for (double& p : out.probs) p /= total;
  }
  return out;
}

inline OccupancyPmf p_Z_mop_approx(std::int64_t k, const SystemConfig& config, double alpha,
                                   bool renormalize = false) {
  const auto q = conditional_noncached_weights(config, alpha);
  return p_Z_gaussian(k, q, renormalize);
}

template <typename F>
concept OccupancyProvider = requires(F f, std::int64_t k) {
  { f(k) } -> std::convertible_to<OccupancyPmf>;
};

// P_out for d requests and capacity C given the miss probability and a
// provider of p_Z(.|k). The provider is only called for k > C with p_K(k) > 0.
template <OccupancyProvider Provider>
OutageResult outage_general(std::int64_t d, std::int64_t capacity, double pnc, Provider&& pz,
                            OutageMethod method = OutageMethod::generic) {
  if (d < 1) throw DomainError("outage_general: d must be >= 1");
  if (capacity < 0) throw DomainError("outage_general: capacity must be >= 0");
  OutageResult result;
  result.method = method;
  if (d <= capacity) return result;

  CompensatedSum success;
  std::int64_t terms = 0;
  for (std::int64_t k = 0; k <= capacity; ++k) {
    const LogProb lk = log_p_K(k, d, pnc);
    if (lk.is_zero()) continue;
    success.add(lk.prob());
    ++terms;
  }
  for (std::int64_t k = capacity + 1; k <= d; ++k) {
    const LogProb lk = log_p_K(k, d, pnc);
    if (lk.is_zero()) continue;
    const OccupancyPmf& pmf = pz(k);
    if (pmf.sigma_sq) {
      const double s = *pmf.sigma_sq;
      result.diagnostics.min_sigma_sq =
          result.diagnostics.min_sigma_sq ? std::min(*result.diagnostics.min_sigma_sq, s) : s;
    }
    const std::int64_t zmax = std::min({capacity, k, pmf.max_z()});
    for (std::int64_t z = 1; z <= zmax; ++z) {
      // Gaussian densities may exceed 1, so the factor is a plain log, not a LogProb.
      const double pz_val = pmf.at(z);
      if (pz_val > 0.0) success.add(std::exp(lk.value() + std::log(pz_val)));
    }
    ++terms;
  }
  const double mass = success.value();
  const double raw = 1.0 - mass;
  result.diagnostics.terms_k = terms;
  result.diagnostics.success_mass = mass;
  if (raw < -1e-9 || raw > 1.0 + 1e-9) result.diagnostics.raw_p_out = raw;
  result.p_out = std::clamp(raw, 0.0, 1.0);
  return result;
}

inline OutageResult outage_rap(const SystemConfig& config) {
  validate(config);
  const double pnc = p_nc(CacheScheme::rap, UniformRequests{}, config);
  if (config.noncached_files() == 0) {
    return OutageResult{0.0, OutageMethod::rap_exact, {}};
  }
  return outage_general(
      config.num_requests, config.backhaul_capacity, pnc,
      [m = static_cast<std::uint64_t>(config.noncached_files())](std::int64_t k) {
        return occupancy_uniform_pmf(m, static_cast<std::uint64_t>(k));
      },
      OutageMethod::rap_exact);
}

inline OutageResult outage_mop(const SystemConfig& config, double alpha, bool renormalize = false) {
  validate(config);
  check_alpha(alpha);
  if (config.noncached_files() == 0) {
    return OutageResult{0.0, OutageMethod::mop_gaussian, {}};
  }
  const double pnc = p_nc(CacheScheme::mop, ZipfRequests{alpha}, config);
  const auto q = conditional_noncached_weights(config, alpha);
  return outage_general(
      config.num_requests, config.backhaul_capacity, pnc,
      [&q, renormalize](std::int64_t k) { return p_Z_gaussian(k, q, renormalize); },
      OutageMethod::mop_gaussian);
}

// Sign convention for the (N-M)^k factor of the printed RaP closed form.
// The composition of the general formula yields (N-M)^k; the other value
// exists only so verification can demonstrate it catches the flipped sign.
enum class ClosedFormBase { library_minus_cache, cache_minus_library };

// RaP outage from the closed form in exact integer arithmetic:
//   N^d P_succ = sum_{k<=C} C(d,k) M^{d-k} (N-M)^k
//              + sum_{k>C} C(d,k) M^{d-k} sum_{z=1}^{C} C(N-M,z) S(k,z) z!
// Independent of the occupancy DP; cost grows with d * C big-integer products.
inline OutageResult outage_rap_closed_form(const SystemConfig& config,
                                           ClosedFormBase base = ClosedFormBase::library_minus_cache) {
  using boost::multiprecision::cpp_int;
  using boost::multiprecision::cpp_rational;
  validate(config);
  const std::int64_t n = config.library_size;
  const std::int64_t m = config.cache_size;
  const std::int64_t c = config.backhaul_capacity;
  const std::int64_t d = config.num_requests;
  OutageResult result;
  result.method = OutageMethod::rap_exact;
  if (d <= c) return result;

  const std::int64_t free_bins = n - m;
  const cpp_int signed_free = base == ClosedFormBase::library_minus_cache ? cpp_int(free_bins)
                                                                          : cpp_int(-free_bins);
  const auto zcap = static_cast<std::uint64_t>(std::min(c, free_bins));
  const auto stirling = stirling2_table(static_cast<std::uint64_t>(d), zcap);

  // Powers of M and binomials C(d,k), C(N-M,z) z! built incrementally.
  std::vector<cpp_int> m_pow(static_cast<std::size_t>(d) + 1);
  m_pow[0] = 1;
  for (std::int64_t i = 1; i <= d; ++i) m_pow[static_cast<std::size_t>(i)] = m_pow[static_cast<std::size_t>(i - 1)] * m;
  std::vector<cpp_int> falling(zcap + 1);  // C(N-M, z) z! = (N-M)!/(N-M-z)!
  falling[0] = 1;
  for (std::uint64_t z = 1; z <= zcap; ++z) falling[z] = falling[z - 1] * (free_bins - static_cast<std::int64_t>(z) + 1);

  cpp_int numerator = 0;
  cpp_int binom = 1;  // C(d, k)
  cpp_int free_pow = 1;
  for (std::int64_t k = 0; k <= d; ++k) {
    if (k > 0) {
      binom = binom * (d - k + 1) / k;
      free_pow *= signed_free;
    }
    const cpp_int& mp = m_pow[static_cast<std::size_t>(d - k)];
    if (k <= c) {
      numerator += binom * mp * free_pow;
    } else {
      cpp_int inner = 0;
      for (std::uint64_t z = 1; z <= std::min<std::uint64_t>(zcap, static_cast<std::uint64_t>(k)); ++z)
        inner += falling[z] * stirling[static_cast<std::size_t>(k)][z];
      numerator += binom * mp * inner;
    }
  }
  cpp_int denominator = 1;
  for (std::int64_t i = 0; i < d; ++i) denominator *= n;

  const cpp_rational success(numerator, denominator);
  const double mass = success.convert_to<double>();
  const double raw = cpp_rational(1 - success).convert_to<double>();
  result.diagnostics.terms_k = d + 1;
  result.diagnostics.success_mass = mass;
  if (raw < -1e-9 || raw > 1.0 + 1e-9) result.diagnostics.raw_p_out = raw;
  result.p_out = std::clamp(raw, 0.0, 1.0);
  return result;
}

}  // namespace edge_outage

#endif  // EDGE_OUTAGE_ANALYTIC_HPP
