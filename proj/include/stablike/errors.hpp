#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace stablike {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A series or quadrature did not reach its tolerance. The best available
/// estimate is kept so callers can decide whether it is still usable.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double partial_value, double est_abs_error)
      : std::runtime_error(what), partial_value_(partial_value), est_abs_error_(est_abs_error) {}

  double partial_value() const noexcept { return partial_value_; }
  double est_abs_error() const noexcept { return est_abs_error_; }

 private:
  double partial_value_;
  double est_abs_error_;
};

/// Violated precondition on a composite input (grids, profiles, settings).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Collects every problem found while validating a configuration.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> problems)
      : std::runtime_error(join(problems)), problems_(std::move(problems)) {}

  const std::vector<std::string>& problems() const noexcept { return problems_; }

 private:
  static std::string join(const std::vector<std::string>& p) {
    std::string out = "invalid configuration:";
    for (const auto& s : p) out += "\n  - " + s;
    return out;
  }
  std::vector<std::string> problems_;
};

}  // namespace stablike
