#pragma once

#include <stdexcept>
#include <string>

namespace hermite {

/// Degree or derivative order above what the evaluator is configured for.
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller supplied bad data (non-finite sample, missing derivative, bad range).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative kernel failed to converge or a root bracket broke down.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Linear system is singular or too ill-conditioned to trust.
class SolvabilityError : public std::runtime_error {
 public:
  SolvabilityError(const std::string& what, double condition)
      : std::runtime_error(what), condition_(condition) {}
  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

/// Least-squares design matrix lost rank.
class ConditioningError : public std::runtime_error {
 public:
  ConditioningError(const std::string& what, int rank, int columns)
      : std::runtime_error(what), rank_(rank), columns_(columns) {}
  int rank() const noexcept { return rank_; }
  int columns() const noexcept { return columns_; }

 private:
  int rank_;
  int columns_;
};

}  // namespace hermite
