#pragma once

#include <stdexcept>
#include <string>

namespace lpsub {

/// Argument outside the mathematical domain of an operation (ell <= 0, N <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Caller combined arguments that the API does not accept.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidShape : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Target point lies on the boundary where an off-boundary evaluation was requested.
class OnBoundaryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Kernel evaluated at coincident points.
class SingularEvaluation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class UnsupportedSurface : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Subtraction solution does not satisfy its anchor constraints.
class InvalidSolution : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double rcond)
      : std::runtime_error(what), rcond_(rcond) {}
  double rcond() const noexcept { return rcond_; }

 private:
  double rcond_;
};

}  // namespace lpsub
