#pragma once

#include <stdexcept>
#include <string>

namespace ladmap {

/// Bad shapes, non-finite entries, out-of-range parameters.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A solver configuration that violates a convergence hypothesis.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A quality metric that is undefined for its inputs (zero denominator).
class MetricError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ladmap
