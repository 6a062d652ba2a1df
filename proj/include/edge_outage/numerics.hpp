#ifndef EDGE_OUTAGE_NUMERICS_HPP
#define EDGE_OUTAGE_NUMERICS_HPP

// Combinatorial primitives that stay finite where the naive formulas do not:
// log-space factorials and binomials, exact Stirling numbers of the second
// kind, the uniform occupancy distribution, and compensated reductions.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "edge_outage/error.hpp"

namespace edge_outage {

using BigNat = boost::multiprecision::cpp_int;

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// ln(p) for p in [0, 1]; -inf encodes p = 0.
class LogProb {
 public:
  constexpr LogProb() = default;
  constexpr explicit LogProb(double log_value) : value_(log_value) {}

  static LogProb from_prob(double p) { return LogProb(p > 0.0 ? std::log(p) : kNegInf); }
  static constexpr LogProb zero() { return LogProb(kNegInf); }
  static constexpr LogProb one() { return LogProb(0.0); }

  constexpr double value() const { return value_; }
  double prob() const { return std::exp(value_); }
  constexpr bool is_zero() const { return value_ == kNegInf; }

  friend constexpr LogProb operator*(LogProb a, LogProb b) {
    return (a.is_zero() || b.is_zero()) ? zero() : LogProb(a.value_ + b.value_);
  }

 private:
  double value_ = kNegInf;
};

enum class OccupancyMethod { exact_dp, closed_form, gaussian_approx, oracle, monte_carlo };

inline std::string_view to_string(OccupancyMethod m) {
  switch (m) {
    case OccupancyMethod::exact_dp: return "exact-dp";
    case OccupancyMethod::closed_form: return "closed-form";
    case OccupancyMethod::gaussian_approx: return "gaussian-approx";
    case OccupancyMethod::oracle: return "oracle";
    case OccupancyMethod::monte_carlo: return "monte-carlo";
  }
  return "unknown";
}

// Distribution of the number of non-empty bins Z after k throws.
// probs[z] for z = 0 .. min(k, bins). Gaussian pmfs are not normalized.
struct OccupancyPmf {
  std::int64_t k = 0;
  std::vector<double> probs;
  OccupancyMethod method = OccupancyMethod::exact_dp;
  std::optional<double> sigma_sq;  // gaussian only

  double at(std::int64_t z) const {
    return (z < 0 || z >= static_cast<std::int64_t>(probs.size())) ? 0.0
                                                                   : probs[static_cast<std::size_t>(z)];
  }
  std::int64_t max_z() const { return static_cast<std::int64_t>(probs.size()) - 1; }
};

// Neumaier's variant of Kahan summation. Error does not grow with length.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) {
    add(x);
    return *this;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double compensated_sum(std::span<const double> terms) {
  CompensatedSum acc;
  for (double t : terms) acc.add(t);
  return acc.value();
}

// ln(sum exp(t_i)); empty input gives -inf.
inline double log_sum_exp(std::span<const double> terms) {
  if (terms.empty()) return kNegInf;
  const double hi = *std::max_element(terms.begin(), terms.end());
  if (hi == kNegInf) return kNegInf;
  if (std::isinf(hi)) return hi;
  CompensatedSum acc;
  for (double t : terms) acc.add(std::exp(t - hi));
  return hi + std::log(acc.value());
}

// Cumulative table of ln(n!) up to `cap`, lgamma beyond it.
class LogFactorialTable {
 public:
  static constexpr std::size_t kDefaultCap = 10000;

  explicit LogFactorialTable(std::size_t cap = kDefaultCap) : table_(cap + 1, 0.0) {
    CompensatedSum acc;
    for (std::size_t n = 2; n <= cap; ++n) {
      acc.add(std::log(static_cast<double>(n)));
      table_[n] = acc.value();
    }
  }

  std::size_t cap() const { return table_.size() - 1; }

  double operator()(std::uint64_t n) const {
    if (n < table_.size()) return table_[n];
    return std::lgamma(static_cast<double>(n) + 1.0);
  }

 private:
  std::vector<double> table_;
};

inline const LogFactorialTable& default_log_factorial_table() {
  static const LogFactorialTable table;  // magic static: built once, thread-safe
  return table;
}

inline double log_factorial(std::uint64_t n) { return default_log_factorial_table()(n); }

// ln C(n, k). Symmetric in k <-> n-k bit for bit.
inline double log_binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) throw DomainError("log_binomial: k > n");
  const std::uint64_t lo = std::min(k, n - k);
  const std::uint64_t hi = n - lo;
  if (lo == 0) return 0.0;
  return log_factorial(n) - log_factorial(hi) - log_factorial(lo);
}

// S(k, z) by the additive recurrence S(k,z) = z S(k-1,z) + S(k-1,z-1).
inline BigNat stirling2_exact(std::uint64_t k, std::uint64_t z) {
  if (z > k) return BigNat(0);
  if (k == 0) return BigNat(1);  // z == 0 here
  if (z == 0) return BigNat(0);
  // row[j] = S(i, j) for j = 0..z, rolled forward over i.
  std::vector<BigNat> row(z + 1, BigNat(0));
  row[0] = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    const std::uint64_t top = std::min<std::uint64_t>(i, z);
    for (std::uint64_t j = top; j >= 1; --j) {
      row[j] = row[j] * j + row[j - 1];
    }
    row[0] = 0;
  }
  return row[z];
}

// Full table S(i, j) for i <= k_max, j <= z_max.
inline std::vector<std::vector<BigNat>> stirling2_table(std::uint64_t k_max, std::uint64_t z_max) {
  std::vector<std::vector<BigNat>> s(k_max + 1, std::vector<BigNat>(z_max + 1, BigNat(0)));
  s[0][0] = 1;
  for (std::uint64_t i = 1; i <= k_max; ++i) {
    for (std::uint64_t j = 1; j <= std::min(i, z_max); ++j) {
      s[i][j] = s[i - 1][j] * j + s[i - 1][j - 1];
    }
  }
  return s;
}

// ln(x) for x > 0 without converting x to double: keep the top 62 bits,
// take their log, add the shifted-out exponent. ln(0) = -inf.
inline double log_of(const BigNat& x) {
  if (x.is_zero()) return kNegInf;
  if (x < 0) throw DomainError("log_of: negative argument");
  const std::size_t msb = boost::multiprecision::msb(x);
  constexpr std::size_t kWindow = 62;
  if (msb < kWindow) return std::log(static_cast<double>(x.convert_to<std::uint64_t>()));
  const std::size_t shift = msb - kWindow + 1;
  const BigNat top = x >> shift;
  return std::log(static_cast<double>(top.convert_to<std::uint64_t>())) +
         static_cast<double>(shift) * std::numbers::ln2;
}

// P(Z = z) for k balls thrown uniformly into m bins, by the throw-by-throw
// recurrence f(j,z) = f(j-1,z) z/m + f(j-1,z-1) (m-z+1)/m. Entries z = 0..min(k,m).
inline OccupancyPmf occupancy_uniform_pmf(std::uint64_t m, std::uint64_t k) {
  OccupancyPmf out;
  out.k = static_cast<std::int64_t>(k);
  out.method = OccupancyMethod::exact_dp;
  if (m == 0) {
    if (k > 0) throw DomainError("occupancy_uniform_pmf: zero bins with k > 0 balls");
    out.probs = {1.0};
    return out;
  }
  const std::uint64_t zmax = std::min(k, m);
  std::vector<double> f(zmax + 1, 0.0);
  f[0] = 1.0;
  const double inv_m = 1.0 / static_cast<double>(m);
  for (std::uint64_t j = 1; j <= k; ++j) {
    const std::uint64_t top = std::min(j, zmax);
    for (std::uint64_t z = top; z >= 1; --z) {
      f[z] = f[z] * (static_cast<double>(z) * inv_m) +
             f[z - 1] * (static_cast<double>(m - z + 1) * inv_m);
    }
    f[0] = 0.0;
  }
  out.probs = std::move(f);
  return out;
}

}  // namespace edge_outage

#endif  // EDGE_OUTAGE_NUMERICS_HPP
