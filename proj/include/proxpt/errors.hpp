#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace proxpt {

// An iterative solver ran out of iterations or failed to bracket a solution.
class SolverFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  SolverFailure(const std::string& what, std::vector<double> best)
      : std::runtime_error(what), best_iterate(std::move(best)) {}

  std::vector<double> best_iterate;  // last iterate, when the solver has one
};

// An operation was requested on an object that does not support it
// (e.g. a derivative of a non-differentiable conjugate).
class CapabilityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A step size violated an oracle's stability bound.
class StepSizeError : public std::invalid_argument {
 public:
  StepSizeError(const std::string& what, double bound_)
      : std::invalid_argument(what), bound(bound_) {}

  double bound;
};

// A dataset file could not be parsed.
class DataFormatError : public std::runtime_error {
 public:
  DataFormatError(const std::string& what, long line_)
      : std::runtime_error(what), line(line_) {}

  long line;
};

}  // namespace proxpt
