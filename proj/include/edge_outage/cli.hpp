#ifndef EDGE_OUTAGE_CLI_HPP
#define EDGE_OUTAGE_CLI_HPP

// Subcommand front end shared by the edge_outage binary and the tests.
//
// Exit codes: 0 ok, 2 usage/validation, 3 oracle budget, 4 design ceiling,
// 5 verification failure, 1 anything else.

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "edge_outage/analytic.hpp"
#include "edge_outage/config_json.hpp"
#include "edge_outage/design.hpp"
#include "edge_outage/error.hpp"
#include "edge_outage/model.hpp"
#include "edge_outage/oracle.hpp"
#include "edge_outage/simulate.hpp"
#include "edge_outage/verify.hpp"

namespace edge_outage::cli {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,
  kBudget = 3,
  kCeiling = 4,
  kVerifyFailed = 5,
};

// ---------------------------------------------------------------------------
// Tabular output

using Cell = std::variant<std::monostate, std::int64_t, std::uint64_t, double, std::string, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

// 12 significant digits, '.' decimal point regardless of locale.
inline std::string format_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

inline std::string csv_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "";
        } else if constexpr (std::is_same_v<T, double>) {
          return format_real(v);
        } else if constexpr (std::is_same_v<T, std::string>) {
          return v;
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else {
          return std::to_string(v);
        }
      },
      c);
}

inline nlohmann::ordered_json json_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else {
          return v;
        }
      },
      c);
}

enum class Format { csv, json };

// CSV: header plus one line per row. JSON: a single object when `single` and
// there is exactly one row, otherwise an array of objects.
inline void write_table(std::ostream& out, const Table& t, Format fmt, bool single) {
  if (fmt == Format::csv) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
    out << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
      out << '\n';
    }
    return;
  }
  auto object = [&](const std::vector<Cell>& row) {
    nlohmann::ordered_json o = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) o[t.columns[i]] = json_cell(row[i]);
    return o;
  };
  if (single && t.rows.size() == 1) {
    out << object(t.rows.front()).dump() << '\n';
    return;
  }
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) arr.push_back(object(row));
  out << arr.dump() << '\n';
}

template <typename T>
Cell opt_cell(const std::optional<T>& v) {
  return v ? Cell(*v) : Cell(std::monostate{});
}

// ---------------------------------------------------------------------------
// Shared option groups

struct SystemFlags {
  std::string config_path;
  std::optional<std::string> scheme;
  std::optional<std::int64_t> library;
  std::optional<std::int64_t> cache;
  std::optional<std::int64_t> capacity;
  std::optional<std::int64_t> users;
  std::optional<double> alpha;

  void add_to(CLI::App& app, bool with_users = true) {
    app.add_option("--config", config_path, "JSON configuration file; flags override its values");
    app.add_option("--scheme", scheme, "Placement scheme: rap or mop");
    app.add_option("--library", library, "Library size N");
    app.add_option("--cache", cache, "Cache size M");
    app.add_option("--capacity", capacity, "Backhaul capacity C (distinct files)");
    if (with_users) app.add_option("--users", users, "Concurrent requests d");
    app.add_option("--alpha", alpha, "Zipf shape parameter (MoP)");
  }

  struct Resolved {
    CacheScheme scheme = CacheScheme::rap;
    std::optional<std::int64_t> library, cache, capacity, users;
    std::optional<double> alpha;
  };

  Resolved resolve() const {
    ConfigFile file;
    if (!config_path.empty()) file = load_config_file(config_path);
    Resolved r;
    if (scheme) {
      r.scheme = parse_scheme(*scheme);
    } else if (file.scheme) {
      r.scheme = *file.scheme;
    } else {
      throw ValidationError("scheme", "required (--scheme rap|mop or \"scheme\" in --config)");
    }
    r.library = library ? library : file.library_size;
    r.cache = cache ? cache : file.cache_size;
    r.capacity = capacity ? capacity : file.backhaul_capacity;
    r.users = users ? users : file.num_requests;
    r.alpha = alpha ? alpha : file.zipf_alpha;
    if (r.alpha) check_alpha(*r.alpha);
    if (r.scheme == CacheScheme::mop && !r.alpha)
      throw ValidationError("zipf_alpha", "required for the mop scheme (--alpha)");
    if (r.scheme == CacheScheme::rap) r.alpha.reset();
    return r;
  }
};

template <typename T>
T require(const std::optional<T>& v, const char* field) {
  if (!v) throw ValidationError(field, "required");
  return *v;
}

inline SystemConfig full_config(const SystemFlags::Resolved& r) {
  return validate(SystemConfig{require(r.library, "library_size"), require(r.cache, "cache_size"),
                               require(r.capacity, "backhaul_capacity"), require(r.users, "num_requests")});
}

inline unsigned default_workers() {
  if (const char* env = std::getenv("EDGE_OUTAGE_WORKERS")) {
    unsigned w = 0;
    const std::string_view s(env);
    const auto res = std::from_chars(s.data(), s.data() + s.size(), w);
    if (res.ec == std::errc() && res.ptr == s.data() + s.size() && w > 0) return w;
  }
  return 1;
}

inline void add_format(CLI::App& app, std::string& format) {
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
}

inline Format to_format(const std::string& s) { return s == "json" ? Format::json : Format::csv; }

// ---------------------------------------------------------------------------
// Commands

struct OutageArgs {
  SystemFlags sys;
  std::string format = "csv";
  bool renormalize = false;
};

inline int cmd_outage(const OutageArgs& a, std::ostream& out) {
  const auto r = a.sys.resolve();
  const SystemConfig cfg = full_config(r);
  const OutageResult res = r.scheme == CacheScheme::rap ? outage_rap(cfg) : outage_mop(cfg, *r.alpha, a.renormalize);
  Table t;
  t.columns = {"scheme",     "library_size", "cache_size",   "backhaul_capacity", "num_requests",
               "zipf_alpha", "renormalize_occupancy", "method", "p_out", "terms_k",
               "success_mass", "min_sigma_sq", "raw_p_out"};
  t.rows.push_back({std::string(to_string(r.scheme)), cfg.library_size, cfg.cache_size, cfg.backhaul_capacity,
                    cfg.num_requests, opt_cell(r.alpha), r.scheme == CacheScheme::mop && a.renormalize,
                    std::string(to_string(res.method)), res.p_out, res.diagnostics.terms_k,
                    res.diagnostics.success_mass, opt_cell(res.diagnostics.min_sigma_sq),
                    opt_cell(res.diagnostics.raw_p_out)});
  write_table(out, t, to_format(a.format), true);
  return kOk;
}

struct OccupancyArgs {
  std::int64_t bins = 1;
  std::int64_t balls = 0;
  std::optional<double> alpha;
  std::optional<std::int64_t> library;
  std::optional<std::int64_t> cache;
  std::string method = "exact";
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  bool renormalize = false;
  std::string format = "csv";
};

inline int cmd_occupancy(const OccupancyArgs& a, std::ostream& out) {
  if (a.bins < 1) throw ValidationError("bins", "must be >= 1");
  if (a.balls < 0) throw ValidationError("balls", "must be >= 0");
  const bool weighted = a.alpha.has_value();
  std::optional<std::int64_t> library = a.library;
  std::optional<std::int64_t> cache = a.cache;
  std::vector<double> q;
  if (weighted) {
    check_alpha(*a.alpha);
    const std::int64_t m = cache.value_or(0);
    const std::int64_t n = library.value_or(a.bins + m);
    const SystemConfig cfg = validate(SystemConfig{n, m, 0, 1});
    if (cfg.noncached_files() != a.bins)
      throw ValidationError("bins", "must equal library - cache (" + std::to_string(cfg.noncached_files()) + ")");
    library = n;
    cache = m;
    q = conditional_noncached_weights(cfg, *a.alpha);
  } else {
    q.assign(static_cast<std::size_t>(a.bins), 1.0 / static_cast<double>(a.bins));
  }

  OccupancyPmf pmf;
  bool monte_carlo = false;
  if (a.method == "exact") {
    if (weighted) throw ValidationError("method", "exact is for uniform bins; use oracle or gaussian with --alpha");
    pmf = occupancy_uniform_pmf(static_cast<std::uint64_t>(a.bins), static_cast<std::uint64_t>(a.balls));
  } else if (a.method == "gaussian") {
    if (a.balls < 1) throw ValidationError("balls", "gaussian method needs at least one ball");
    pmf = p_Z_gaussian(a.balls, q, a.renormalize);
  } else if (a.method == "oracle") {
    pmf = exact_occupancy_weighted(q, a.balls);
  } else {
    pmf = monte_carlo_occupancy(q, a.balls, a.trials, a.seed, a.workers);
    monte_carlo = true;
  }

  Table t;
  t.columns = {"method", "bins", "balls", "zipf_alpha", "library_size", "cache_size", "trials", "seed", "z", "p"};
  const std::int64_t zmin = std::min<std::int64_t>(a.balls, 1);
  for (std::int64_t z = zmin; z <= pmf.max_z(); ++z) {
    t.rows.push_back({std::string(to_string(pmf.method)), a.bins, a.balls, opt_cell(a.alpha), opt_cell(library),
                      opt_cell(cache), monte_carlo ? Cell(a.trials) : Cell(), monte_carlo ? Cell(a.seed) : Cell(), z,
                      pmf.at(z)});
  }
  write_table(out, t, to_format(a.format), false);
  return kOk;
}

struct SimulateArgs {
  SystemFlags sys;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  bool fixed_cache = false;
  std::string format = "json";
};

inline int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  const auto r = a.sys.resolve();
  const SystemConfig cfg = full_config(r);
  if (a.trials < 1) throw ValidationError("trials", "must be >= 1");
  SimulationOptions opt;
  opt.trials = a.trials;
  opt.seed = a.seed;
  opt.workers = a.workers;
  opt.rap_cache = a.fixed_cache ? RapCacheMode::fixed : RapCacheMode::resample;
  const SimulationReport rep = monte_carlo_outage(cfg, r.scheme, r.alpha, opt);
  const WilsonInterval ci = wilson_interval(rep.outage_count, rep.trials);
  Table t;
  t.columns = {"scheme", "library_size", "cache_size", "backhaul_capacity", "num_requests", "zipf_alpha",
               "rap_cache", "trials", "seed", "outage_count", "p_out_hat", "ci_half_width_95", "ci_low_95",
               "ci_high_95"};
  const Cell cache_mode = r.scheme == CacheScheme::rap ? Cell(std::string(a.fixed_cache ? "fixed" : "resample")) : Cell();
  t.rows.push_back({std::string(to_string(r.scheme)), cfg.library_size, cfg.cache_size, cfg.backhaul_capacity,
                    cfg.num_requests, opt_cell(r.alpha), cache_mode, rep.trials, rep.seed, rep.outage_count,
                    rep.p_out_hat, rep.ci_half_width_95, ci.low, ci.high});
  write_table(out, t, to_format(a.format), true);
  return kOk;
}

struct DesignArgs {
  SystemFlags sys;
  double target = 0.01;
  std::optional<std::int64_t> d_max;
  bool renormalize = false;
  std::string format = "csv";
};

inline int cmd_design(const DesignArgs& a, std::ostream& out) {
  const auto r = a.sys.resolve();
  DesignQuery q;
  q.scheme = r.scheme;
  q.library_size = require(r.library, "library_size");
  q.cache_size = require(r.cache, "cache_size");
  q.capacity = require(r.capacity, "backhaul_capacity");
  q.alpha = r.alpha;
  q.target_p_out = a.target;
  q.d_max = a.d_max;
  q.renormalize = a.renormalize;
  const std::int64_t d_star = max_supported_users(q);
  Table t;
  t.columns = {"scheme", "library_size", "cache_size", "backhaul_capacity", "zipf_alpha", "target_p_out", "d_max",
               "method", "max_users"};
  t.rows.push_back({std::string(to_string(q.scheme)), q.library_size, q.cache_size, q.capacity, opt_cell(q.alpha),
                    q.target_p_out, q.effective_d_max(),
                    std::string(to_string(q.scheme == CacheScheme::rap ? OutageMethod::rap_exact
                                                                       : OutageMethod::mop_gaussian)),
                    d_star});
  write_table(out, t, to_format(a.format), true);
  return kOk;
}

// "name=a:b", "name=a:b:step" (inclusive) or "name=v1,v2,...".
inline SweepAxis parse_axis(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0) throw ValidationError("axis", "expected name=values, got '" + spec + "'");
  SweepAxis axis;
  axis.name = spec.substr(0, eq);
  const std::string body = spec.substr(eq + 1);
  auto number = [&](const std::string& s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
      throw ValidationError("axis", "bad number '" + s + "' in '" + spec + "'");
    return v;
  };
  if (body.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(body);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() < 2 || parts.size() > 3) throw ValidationError("axis", "range must be a:b or a:b:step");
    const double lo = number(parts[0]);
    const double hi = number(parts[1]);
    const double step = parts.size() == 3 ? number(parts[2]) : 1.0;
    if (!(step > 0.0) || hi < lo) throw ValidationError("axis", "range needs lo <= hi and step > 0");
    const auto count = static_cast<std::int64_t>(std::floor((hi - lo) / step + 1e-9));
    for (std::int64_t i = 0; i <= count; ++i) axis.values.push_back(lo + static_cast<double>(i) * step);
  } else {
    std::stringstream ss(body);
    for (std::string p; std::getline(ss, p, ',');) axis.values.push_back(number(p));
  }
  if (axis.values.empty()) throw ValidationError("axis", "no values in '" + spec + "'");
  return axis;
}

struct SweepArgs {
  SystemFlags sys;
  std::vector<std::string> axes;
  std::optional<double> target;
  std::optional<std::int64_t> d_max;
  unsigned workers = 1;
  bool renormalize = false;
  std::string format = "csv";
};

inline int cmd_sweep(const SweepArgs& a, std::ostream& out) {
  const auto r = a.sys.resolve();
  SweepSpec spec;
  spec.scheme = r.scheme;
  spec.alpha = r.alpha;
  spec.renormalize = a.renormalize;
  spec.d_max = a.d_max;
  spec.workers = a.workers;
  for (const auto& s : a.axes) spec.axes.push_back(parse_axis(s));
  auto on_axis = [&](const std::string& name) {
    return std::any_of(spec.axes.begin(), spec.axes.end(), [&](const auto& ax) { return ax.name == name; });
  };
  spec.kind = (a.target || on_axis("target")) ? SweepKind::max_users : SweepKind::outage;
  if (spec.kind == SweepKind::max_users) {
    if (on_axis("d")) throw ValidationError("axis", "d cannot be an axis of a max-users sweep");
    spec.target_p_out = a.target.value_or(0.01);
  }
  if (spec.scheme == CacheScheme::mop && !spec.alpha && !on_axis("alpha"))
    throw ValidationError("zipf_alpha", "required for the mop scheme");
  auto field = [&](const std::optional<std::int64_t>& v, const char* axis, const char* name, std::int64_t dflt) {
    if (on_axis(axis)) return v.value_or(dflt);
    return require(v, name);
  };
  spec.base.library_size = field(r.library, "N", "library_size", 1);
  spec.base.cache_size = field(r.cache, "M", "cache_size", 0);
  spec.base.backhaul_capacity = field(r.capacity, "C", "backhaul_capacity", 0);
  spec.base.num_requests = spec.kind == SweepKind::max_users ? 1 : field(r.users, "d", "num_requests", 1);
  if (spec.scheme == CacheScheme::mop && !spec.alpha) spec.alpha = 1.0;  // overwritten per cell by the alpha axis

  const SweepTable table = sweep(spec);
  Table t;
  if (table.kind == SweepKind::outage) {
    t.columns = {"scheme", "library_size", "cache_size", "backhaul_capacity", "num_requests", "zipf_alpha",
                 "method", "p_out"};
    for (const auto& c : table.cells)
      t.rows.push_back({std::string(to_string(table.scheme)), c.config.library_size, c.config.cache_size,
                        c.config.backhaul_capacity, c.config.num_requests, opt_cell(c.alpha),
                        std::string(to_string(c.method)), c.value});
  } else {
    t.columns = {"scheme", "library_size", "cache_size", "backhaul_capacity", "zipf_alpha", "target_p_out",
                 "method", "max_users", "at_ceiling"};
    for (const auto& c : table.cells)
      t.rows.push_back({std::string(to_string(table.scheme)), c.config.library_size, c.config.cache_size,
                        c.config.backhaul_capacity, opt_cell(c.alpha), opt_cell(c.target_p_out),
                        std::string(to_string(c.method)), static_cast<std::int64_t>(c.value), c.at_ceiling});
  }
  write_table(out, t, to_format(a.format), false);
  return kOk;
}

struct VerifyArgs {
  std::int64_t max_library = 6;
  std::int64_t max_users = 7;
  std::string format = "csv";
};

#ifdef EDGE_OUTAGE_INJECT_RAP_SIGN_FAULT
inline constexpr ClosedFormBase kVerifyClosedFormBase = ClosedFormBase::cache_minus_library;
#else
inline constexpr ClosedFormBase kVerifyClosedFormBase = ClosedFormBase::library_minus_cache;
#endif

inline int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  if (a.max_library < 1) throw ValidationError("max_library", "must be >= 1");
  if (a.max_users < 1) throw ValidationError("max_users", "must be >= 1");
  VerifyOptions opt;
  opt.max_library = a.max_library;
  opt.max_users = a.max_users;
  opt.closed_form_base = kVerifyClosedFormBase;
  const auto checks = run_verification(opt);
  Table t;
  t.columns = {"check", "cases", "max_abs_discrepancy", "tolerance", "status"};
  bool ok = true;
  for (const auto& c : checks) {
    t.rows.push_back({c.name, c.cases, c.max_abs_discrepancy, kVerifyTolerance, std::string(c.passed() ? "ok" : "FAIL")});
    ok = ok && c.passed();
  }
  write_table(out, t, to_format(a.format), false);
  if (ok) return kOk;
  err << "verification failed; worst offenders:\n";
  for (const auto& c : checks)
    for (const auto& w : c.worst) err << "  " << c.name << ": " << w.case_label << " discrepancy " << format_real(w.discrepancy) << '\n';
  return kVerifyFailed;
}

// ---------------------------------------------------------------------------

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Outage probability of a cache-enabled relay with a capacity-limited backhaul", "edge_outage"};
  app.require_subcommand(1);

  OutageArgs outage_args;
  auto* outage = app.add_subcommand("outage", "Analytic outage probability");
  outage_args.sys.add_to(*outage);
  add_format(*outage, outage_args.format);
  outage->add_flag("--renormalize-occupancy", outage_args.renormalize, "Renormalize the Gaussian occupancy pmf (MoP)");

  OccupancyArgs occ_args;
  auto* occupancy = app.add_subcommand("occupancy", "Distribution of distinct non-cached files given k misses");
  occupancy->add_option("--bins", occ_args.bins, "Number of bins m")->required();
  occupancy->add_option("--balls", occ_args.balls, "Number of balls k")->required();
  occupancy->add_option("--alpha", occ_args.alpha, "Zipf shape; bins become the non-cached tail of the library");
  occupancy->add_option("--library", occ_args.library, "Library size N (weighted bins)");
  occupancy->add_option("--cache", occ_args.cache, "Cache size M (weighted bins)");
  occupancy->add_option("--method", occ_args.method, "exact | gaussian | oracle | mc")
      ->check(CLI::IsMember({"exact", "gaussian", "oracle", "mc"}));
  occupancy->add_option("--trials", occ_args.trials, "Monte-Carlo trials");
  occupancy->add_option("--seed", occ_args.seed, "Monte-Carlo seed");
  occupancy->add_option("--workers", occ_args.workers, "Worker threads")->check(CLI::PositiveNumber);
  occupancy->add_flag("--renormalize-occupancy", occ_args.renormalize, "Renormalize the Gaussian pmf");
  add_format(*occupancy, occ_args.format);

  SimulateArgs sim_args;
  sim_args.workers = default_workers();
  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo outage estimate");
  sim_args.sys.add_to(*simulate);
  simulate->add_option("--trials", sim_args.trials, "Number of trials");
  simulate->add_option("--seed", sim_args.seed, "64-bit seed");
  simulate->add_option("--workers", sim_args.workers, "Worker threads (default $EDGE_OUTAGE_WORKERS or 1)")
      ->check(CLI::PositiveNumber);
  simulate->add_flag("--fixed-cache", sim_args.fixed_cache, "RaP: keep the cache at {1..M} instead of resampling");
  add_format(*simulate, sim_args.format);

  DesignArgs design_args;
  auto* design = app.add_subcommand("design", "Largest d meeting an outage target");
  design_args.sys.add_to(*design, false);
  design->add_option("--target", design_args.target, "Target outage probability")->required();
  design->add_option("--d-max", design_args.d_max, "Search ceiling (default 10C + 10M + 10)");
  design->add_flag("--renormalize-occupancy", design_args.renormalize, "Renormalize the Gaussian pmf");
  add_format(*design, design_args.format);

  SweepArgs sweep_args;
  sweep_args.workers = default_workers();
  auto* sweep_cmd = app.add_subcommand("sweep", "Grid of outage values or max-users values");
  sweep_args.sys.add_to(*sweep_cmd);
  sweep_cmd->add_option("--axis", sweep_args.axes, "name=a:b[:step] or name=v1,v2 (d, C, M, N, alpha, target)")
      ->required();
  sweep_cmd->add_option("--target", sweep_args.target, "Target outage; switches the sweep to max users");
  sweep_cmd->add_option("--d-max", sweep_args.d_max, "Search ceiling for max-users cells");
  sweep_cmd->add_option("--workers", sweep_args.workers, "Worker threads")->check(CLI::PositiveNumber);
  sweep_cmd->add_flag("--renormalize-occupancy", sweep_args.renormalize, "Renormalize the Gaussian pmf");
  add_format(*sweep_cmd, sweep_args.format);

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Cross-check fast paths against exact oracles");
  verify->add_option("--max-library", verify_args.max_library, "Largest N enumerated");
  verify->add_option("--max-users", verify_args.max_users, "Largest d enumerated");
  add_format(*verify, verify_args.format);

  occ_args.workers = default_workers();

  std::vector<const char*> argv;
  argv.push_back("edge_outage");
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (*outage) return cmd_outage(outage_args, out);
    if (*occupancy) return cmd_occupancy(occ_args, out);
    if (*simulate) return cmd_simulate(sim_args, out);
    if (*design) return cmd_design(design_args, out);
    if (*sweep_cmd) return cmd_sweep(sweep_args, out);
    if (*verify) return cmd_verify(verify_args, out, err);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ConfigurationError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const BudgetError& e) {
    err << "error: " << e.what() << '\n';
    return kBudget;
  } catch (const CeilingError& e) {
    err << "error: " << e.what() << '\n';
    return kCeiling;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}

}  // namespace edge_outage::cli

#endif  // EDGE_OUTAGE_CLI_HPP
