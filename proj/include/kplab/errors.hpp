#pragma once

#include <stdexcept>
#include <string>

namespace kplab {

/// Parameter outside the mathematically meaningful range.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Input violates an operation's structural precondition
/// (e.g. a family that must be direction separated is not).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Work estimate above the configured operation budget, or a brute-force
/// size guard tripped.
class BudgetError : public std::runtime_error {
 public:
  BudgetError(const std::string& what, double estimate)
      : std::runtime_error(what), estimate_(estimate) {}
  double estimate() const { return estimate_; }

 private:
  double estimate_;
};

/// Malformed experiment spec. `field()` names the offending key.
class SpecError : public std::runtime_error {
 public:
  SpecError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

}  // namespace kplab
