#ifndef EDGE_OUTAGE_DESIGN_HPP
#define EDGE_OUTAGE_DESIGN_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "edge_outage/analytic.hpp"
#include "edge_outage/error.hpp"
#include "edge_outage/model.hpp"
#include "edge_outage/simulate.hpp"

namespace edge_outage {

struct DesignQuery {
  CacheScheme scheme = CacheScheme::mop;
  std::int64_t library_size = 100;
  std::int64_t cache_size = 0;
  std::int64_t capacity = 0;
  std::optional<double> alpha;
  double target_p_out = 0.01;
  std::optional<std::int64_t> d_max;  // default 10 C + 10 M + 10
  bool renormalize = false;

  std::int64_t effective_d_max() const { return d_max ? *d_max : 10 * capacity + 10 * cache_size + 10; }
};

// Largest P_out decrease in d tolerated as rounding before the scan aborts.
inline constexpr double kMonotonicitySlack = 1e-12;

namespace detail {

// Analytic outage for a fixed (N, M, C) at varying d, with p_Z(.|k) cached
// across calls since it does not depend on d.
class OutageCurve {
 public:
  OutageCurve(CacheScheme scheme, const SystemConfig& base, std::optional<double> alpha, bool renormalize)
      : scheme_(scheme), base_(validate(base)), renormalize_(renormalize) {
    if (scheme == CacheScheme::rap) {
      pnc_ = p_nc(CacheScheme::rap, UniformRequests{}, base);
    } else {
      if (!alpha) throw ConfigurationError("MoP design needs a Zipf alpha");
      pnc_ = p_nc(CacheScheme::mop, ZipfRequests{*alpha}, base);
      if (base.noncached_files() > 0) q_ = conditional_noncached_weights(base, *alpha);
    }
  }

  bool identically_zero() const { return base_.noncached_files() <= base_.backhaul_capacity; }

  OutageResult at(std::int64_t d) {
    SystemConfig cfg = base_;
    cfg.num_requests = d;
    validate(cfg);
    const auto method = scheme_ == CacheScheme::rap ? OutageMethod::rap_exact : OutageMethod::mop_gaussian;
    if (base_.noncached_files() == 0) return OutageResult{0.0, method, {}};
    return outage_general(
        d, base_.backhaul_capacity, pnc_, [this](std::int64_t k) -> const OccupancyPmf& { return pmf(k); },
        method);
  }

 private:
  const OccupancyPmf& pmf(std::int64_t k) {
    const auto idx = static_cast<std::size_t>(k);
    if (cache_.size() <= idx) cache_.resize(idx + 1);
    if (!cache_[idx]) {
      cache_[idx] = scheme_ == CacheScheme::rap
                        ? occupancy_uniform_pmf(static_cast<std::uint64_t>(base_.noncached_files()),
                                                static_cast<std::uint64_t>(k))
                        : p_Z_gaussian(k, q_, renormalize_);
    }
    return *cache_[idx];
  }

  CacheScheme scheme_;
  SystemConfig base_;
  bool renormalize_;
  double pnc_ = 0.0;
  std::vector<double> q_;
  std::vector<std::optional<OccupancyPmf>> cache_;
};

}  // namespace detail

// Largest d whose analytic outage stays within target. Scans d upward from
// C + 1 and aborts if P_out is seen to decrease in d.
inline std::int64_t max_supported_users(const DesignQuery& query) {
  if (!(query.target_p_out > 0.0 && query.target_p_out < 1.0))
    throw ValidationError("target_p_out", "must lie strictly between 0 and 1");
  const SystemConfig base{query.library_size, query.cache_size, query.capacity, 1};
  validate(base);
  const std::int64_t d_max = query.effective_d_max();
  if (d_max <= query.capacity) throw ValidationError("d_max", "must exceed the backhaul capacity");

  detail::OutageCurve curve(query.scheme, base, query.alpha, query.renormalize);
  if (curve.identically_zero()) {
    throw CeilingError(d_max, "outage is identically zero (N - M <= C); every d up to d_max = " +
                                  std::to_string(d_max) + " is supportable");
  }
  double previous = 0.0;
  for (std::int64_t d = query.capacity + 1; d <= d_max; ++d) {
    const double p = curve.at(d).p_out;
    if (p < previous - kMonotonicitySlack) {
      throw MonotonicityError("P_out decreased from " + std::to_string(previous) + " to " + std::to_string(p) +
                              " at d = " + std::to_string(d));
    }
    if (p > query.target_p_out) return d - 1;
    previous = p;
  }
  throw CeilingError(d_max, "P_out still within target at d_max = " + std::to_string(d_max) + "; raise d_max");
}

enum class SweepKind { outage, max_users };

struct SweepAxis {
  std::string name;  // d, C, M, N, alpha or target
  std::vector<double> values;
};

struct SweepSpec {
  SweepKind kind = SweepKind::outage;
  CacheScheme scheme = CacheScheme::rap;
  SystemConfig base;
  std::optional<double> alpha;
  double target_p_out = 0.01;
  std::optional<std::int64_t> d_max;
  bool renormalize = false;
  std::vector<SweepAxis> axes;
  unsigned workers = 1;
};

struct SweepCell {
  SystemConfig config;  // num_requests is meaningless for max_users cells
  std::optional<double> alpha;
  std::optional<double> target_p_out;
  double value = 0.0;  // p_out or d*
  OutageMethod method = OutageMethod::generic;
  bool at_ceiling = false;  // max_users: value is d_max, outage never exceeded target
};

struct SweepTable {
  SweepKind kind = SweepKind::outage;
  CacheScheme scheme = CacheScheme::rap;
  std::vector<std::string> axis_names;
  std::vector<std::vector<double>> axis_values;
  std::vector<SweepCell> cells;  // row-major over axes, last axis fastest
};

namespace detail {

inline std::int64_t as_count(const std::string& axis, double v) {
  if (!(std::isfinite(v) && v == std::floor(v))) throw ValidationError(axis, "axis values must be integers");
  return static_cast<std::int64_t>(v);
}

inline void apply_axis(SweepCell& cell, const std::string& name, double v) {
  if (name == "d") {
    cell.config.num_requests = as_count(name, v);
  } else if (name == "C") {
    cell.config.backhaul_capacity = as_count(name, v);
  } else if (name == "M") {
    cell.config.cache_size = as_count(name, v);
  } else if (name == "N") {
    cell.config.library_size = as_count(name, v);
  } else if (name == "alpha") {
    cell.alpha = v;
  } else if (name == "target") {
    cell.target_p_out = v;
  } else {
    throw ValidationError("axis", "unknown axis '" + name + "' (expected d, C, M, N, alpha or target)");
  }
}

inline void evaluate_cell(SweepCell& cell, const SweepSpec& spec) {
  cell.method = spec.scheme == CacheScheme::rap ? OutageMethod::rap_exact : OutageMethod::mop_gaussian;
  if (spec.kind == SweepKind::outage) {
    if (spec.scheme == CacheScheme::rap) {
      cell.value = outage_rap(cell.config).p_out;
    } else {
      if (!cell.alpha) throw ConfigurationError("MoP sweep needs a Zipf alpha");
      cell.value = outage_mop(cell.config, *cell.alpha, spec.renormalize).p_out;
    }
    return;
  }
  DesignQuery q;
  q.scheme = spec.scheme;
  q.library_size = cell.config.library_size;
  q.cache_size = cell.config.cache_size;
  q.capacity = cell.config.backhaul_capacity;
  q.alpha = cell.alpha;
  q.target_p_out = *cell.target_p_out;
  q.d_max = spec.d_max;
  q.renormalize = spec.renormalize;
  try {
    cell.value = static_cast<double>(max_supported_users(q));
  } catch (const CeilingError& e) {
    cell.value = static_cast<double>(e.d_max());
    cell.at_ceiling = true;
  }
}

}  // namespace detail

// One analytic evaluation per cell of the cartesian product of the axes.
inline SweepTable sweep(const SweepSpec& spec) {
  if (spec.axes.empty()) throw ValidationError("axis", "at least one axis is required");
  SweepTable table;
  table.kind = spec.kind;
  table.scheme = spec.scheme;
  std::size_t total = 1;
  for (const auto& axis : spec.axes) {
    if (axis.values.empty()) throw ValidationError("axis", "axis '" + axis.name + "' has no values");
    table.axis_names.push_back(axis.name);
    table.axis_values.push_back(axis.values);
    total *= axis.values.size();
  }

  std::vector<SweepCell> cells(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    SweepCell& cell = cells[idx];
    cell.config = spec.base;
    cell.alpha = spec.scheme == CacheScheme::mop ? spec.alpha : std::nullopt;
    if (spec.kind == SweepKind::max_users) cell.target_p_out = spec.target_p_out;
    std::size_t rem = idx;
    for (std::size_t a = spec.axes.size(); a-- > 0;) {
      const auto& axis = spec.axes[a];
      detail::apply_axis(cell, axis.name, axis.values[rem % axis.values.size()]);
      rem /= axis.values.size();
    }
    validate(cell.config);
  }

  detail::run_chunked(total, spec.workers, [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i) detail::evaluate_cell(cells[i], spec);
    return 0;
  });
  table.cells = std::move(cells);
  return table;
}

}  // namespace edge_outage

#endif  // EDGE_OUTAGE_DESIGN_HPP
