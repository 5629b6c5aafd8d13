#pragma once

#include <stdexcept>
#include <string>

namespace hwstaff {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Offered load at or above the server count (rho >= 1).
class InstabilityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Invalid simulation or tool configuration.
class ConfigError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A numerical method failed to reach its tolerance. Carries the best
/// estimate produced so far, its error bound and the iteration count.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double best_estimate, double error_bound,
                 long iterations)
      : std::runtime_error(what),
        best_estimate_(best_estimate),
        error_bound_(error_bound),
        iterations_(iterations) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double error_bound() const noexcept { return error_bound_; }
  long iterations() const noexcept { return iterations_; }

 private:
  double best_estimate_;
  double error_bound_;
  long iterations_;
};

/// Root-finding endpoints do not bracket the target.
class BracketError : public NumericalError {
 public:
  BracketError(const std::string& what, double f_lo, double f_hi)
      : NumericalError(what, 0.0, 0.0, 0), f_lo_(f_lo), f_hi_(f_hi) {}

  double f_lo() const noexcept { return f_lo_; }
  double f_hi() const noexcept { return f_hi_; }

 private:
  double f_lo_;
  double f_hi_;
};

}  // namespace hwstaff
