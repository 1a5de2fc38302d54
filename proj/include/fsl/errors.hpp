#pragma once

#include <stdexcept>
#include <string>

namespace fsl {

// Error taxonomy, mirrored by the C API status codes and the CLI exit codes:
// scenario/schema problems, physics-domain violations, numerical failures.

class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when an adaptive scheme runs out of subdivisions. Carries the best
// estimate so a caller can still inspect how far the computation got.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double best_estimate,
                   double error_estimate)
      : std::runtime_error(what),
        best_estimate_(best_estimate),
        error_estimate_(error_estimate) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double best_estimate_;
  double error_estimate_;
};

}  // namespace fsl
