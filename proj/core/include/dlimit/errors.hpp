#pragma once

#include <stdexcept>
#include <string>

namespace dlimit {

/// Caller violated a precondition (bad argument, mismatched grids, bad config).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thermodynamic argument outside the admissible set of the closure.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised by the positivity monitors; carries the field minima at abort time.
class PositivityError : public std::runtime_error {
 public:
  PositivityError(const std::string& what, double t, double min_p, double min_S)
      : std::runtime_error(what), t_(t), min_p_(min_p), min_S_(min_S) {}

  double time() const noexcept { return t_; }
  double min_pressure() const noexcept { return min_p_; }
  double min_entropy() const noexcept { return min_S_; }

 private:
  double t_;
  double min_p_;
  double min_S_;
};

/// A NaN/Inf or an otherwise unusable numerical result.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dlimit
