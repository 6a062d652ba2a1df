#ifndef EDGE_OUTAGE_VERIFY_HPP
#define EDGE_OUTAGE_VERIFY_HPP

// Cross-checks of the fast paths against the exact references.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "edge_outage/analytic.hpp"
#include "edge_outage/oracle.hpp"

namespace edge_outage {

inline constexpr double kVerifyTolerance = 1e-9;

struct VerifyOffender {
  std::string case_label;
  double discrepancy = 0.0;
};

struct VerifyCheck {
  std::string name;
  std::int64_t cases = 0;
  double max_abs_discrepancy = 0.0;
  std::vector<VerifyOffender> worst;  // descending, at most kKeepWorst

  static constexpr std::size_t kKeepWorst = 5;

  bool passed() const { return max_abs_discrepancy <= kVerifyTolerance; }

  void record(double discrepancy, const std::string& label) {
    ++cases;
    if (!std::isfinite(discrepancy)) discrepancy = std::numeric_limits<double>::infinity();
    max_abs_discrepancy = std::max(max_abs_discrepancy, discrepancy);
    if (discrepancy <= kVerifyTolerance) return;
    worst.push_back({label, discrepancy});
    std::sort(worst.begin(), worst.end(), [](const auto& a, const auto& b) { return a.discrepancy > b.discrepancy; });
    if (worst.size() > kKeepWorst) worst.pop_back();
  }
};

struct VerifyOptions {
  std::int64_t max_library = 6;
  std::int64_t max_users = 7;
  std::int64_t max_occupancy = 30;  // m, k bound for the Stirling check
  ClosedFormBase closed_form_base = ClosedFormBase::library_minus_cache;
  OracleBudget budget;
};

// C(m,z) S(k,z) z! / m^k as an exact rational, for z = 0..min(k,m).
inline std::vector<boost::multiprecision::cpp_rational> stirling_occupancy_exact(std::uint64_t m, std::uint64_t k) {
  using boost::multiprecision::cpp_int;
  using boost::multiprecision::cpp_rational;
  const std::uint64_t zmax = std::min(k, m);
  const auto s = stirling2_table(k, zmax);
  cpp_int m_pow_k = 1;
  for (std::uint64_t i = 0; i < k; ++i) m_pow_k *= m;
  std::vector<cpp_rational> out(zmax + 1);
  cpp_int falling = 1;  // m (m-1) ... (m-z+1) = C(m,z) z!
  for (std::uint64_t z = 0; z <= zmax; ++z) {
    if (z > 0) falling *= (m - z + 1);
    out[z] = cpp_rational(falling * s[k][z], m_pow_k);
  }
  return out;
}

inline std::vector<VerifyCheck> run_verification(const VerifyOptions& opt) {
  std::vector<VerifyCheck> checks;

  VerifyCheck dp;
  dp.name = "occupancy-dp-vs-stirling";
  for (std::int64_t m = 1; m <= opt.max_occupancy; ++m) {
    for (std::int64_t k = 0; k <= opt.max_occupancy; ++k) {
      const auto exact = stirling_occupancy_exact(static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(k));
      const auto pmf = occupancy_uniform_pmf(static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(k));
      double worst = 0.0;
      for (std::size_t z = 0; z < exact.size(); ++z)
        worst = std::max(worst, std::abs(pmf.probs[z] - exact[z].convert_to<double>()));
      dp.record(worst, "m=" + std::to_string(m) + " k=" + std::to_string(k));
    }
  }
  checks.push_back(std::move(dp));

  VerifyCheck weighted;
  weighted.name = "weighted-oracle-vs-dp";
  for (std::int64_t m = 1; m <= std::min<std::int64_t>(10, opt.budget.max_subset_bins); ++m) {
    const std::vector<double> q(static_cast<std::size_t>(m), 1.0 / static_cast<double>(m));
    for (std::int64_t k = 0; k <= 15; ++k) {
      const auto oracle = exact_occupancy_weighted(q, k, opt.budget);
      const auto pmf = occupancy_uniform_pmf(static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(k));
      double worst = 0.0;
      for (std::size_t z = 0; z < pmf.probs.size(); ++z) worst = std::max(worst, std::abs(pmf.probs[z] - oracle.at(static_cast<std::int64_t>(z))));
      weighted.record(worst, "m=" + std::to_string(m) + " k=" + std::to_string(k));
    }
  }
  checks.push_back(std::move(weighted));

  VerifyCheck composed;
  composed.name = "rap-composed-vs-brute-force";
  VerifyCheck closed;
  closed.name = "rap-closed-form-vs-brute-force";
  for (std::int64_t n = 1; n <= opt.max_library; ++n) {
    for (std::int64_t m = 0; m <= n; ++m) {
      for (std::int64_t d = 1; d <= opt.max_users; ++d) {
        const SystemConfig base{n, m, 0, d};
        const auto dist = brute_force_noncached_distribution(base, CacheScheme::rap, std::nullopt, opt.budget);
        for (std::int64_t c = 0; c < d; ++c) {
          SystemConfig cfg = base;
          cfg.backhaul_capacity = c;
          CompensatedSum tail;
          for (std::size_t z = static_cast<std::size_t>(c) + 1; z < dist.size(); ++z) tail.add(dist[z]);
          const double truth = tail.value();
          const std::string label = "N=" + std::to_string(n) + " M=" + std::to_string(m) +
                                    " C=" + std::to_string(c) + " d=" + std::to_string(d);
          composed.record(std::abs(outage_rap(cfg).p_out - truth), label);
          const OutageResult cf = outage_rap_closed_form(cfg, opt.closed_form_base);
          const double cf_raw = cf.diagnostics.raw_p_out.value_or(cf.p_out);
          closed.record(std::abs(cf_raw - truth), label);
        }
      }
    }
  }
  checks.push_back(std::move(composed));
  checks.push_back(std::move(closed));
  return checks;
}

}  // namespace edge_outage

#endif  // EDGE_OUTAGE_VERIFY_HPP
