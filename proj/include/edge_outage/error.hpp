#ifndef EDGE_OUTAGE_ERROR_HPP
#define EDGE_OUTAGE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace edge_outage {

// Argument outside the mathematical domain of an operation (k > n, m = 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A SystemConfig field violates its invariant. field() names the offender.
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// Scheme and request model do not belong together (RaP needs Uniform, MoP needs Zipf).
class ConfigurationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An exact oracle was asked for more work than its budget allows.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Design scan hit d_max while the outage was still within target.
class CeilingError : public std::runtime_error {
 public:
  CeilingError(long long d_max, const std::string& what)
      : std::runtime_error(what), d_max_(d_max) {}

  long long d_max() const noexcept { return d_max_; }

 private:
  long long d_max_;
};

// Design scan observed P_out decreasing in d.
class MonotonicityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace edge_outage

#endif  // EDGE_OUTAGE_ERROR_HPP
