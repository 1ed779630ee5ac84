#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace absnorm {

/// Operands of mismatched order.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of an operation (p < 1, t <= 0, n = 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// One or more named preconditions failed. Each failure is kept separately so
/// callers can report them individually.
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(std::vector<std::string> failures);

  const std::vector<std::string>& failures() const noexcept { return failures_; }

 private:
  std::vector<std::string> failures_;
};

/// An iterative kernel stopped without meeting its convergence criterion.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// A numerical result violated a contract that holds in exact arithmetic by
/// more than roundoff (e.g. a clearly negative eigenvalue of A*A).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Search could not evaluate its objective at any start.
class SearchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace absnorm
