#pragma once

#include <cstdint>

#include "ladmap/lrr.hpp"

namespace ladmap {

/// ADM on the split  min ||J||_* + mu ||E||_{2,1}  s.t.  X = X Z + E, Z = J.
struct AdmConfig {
  double eps1 = 1e-4;
  double eps2 = 1e-5;
  double beta0 = 1e-6;
  double beta_max = 1e10;
  double rho = 1.1;
  int max_iter = 2000;
  double lanczos_tol = 1e-10;
  std::uint64_t seed = 0xad0;

  void validate() const;
};

/// Stops when ||X Z + E - X|| / ||X|| <= eps1, ||Z - J|| / ||X|| <= eps1 and
/// max(||dE||, ||dZ||) / ||X|| <= eps2. The trace's kkt2 column holds the
/// last of these. The returned Z is the low-rank block J.
LrrResult solve_adm_lrr(const LrrProblem& problem, const AdmConfig& config = {});

/// Penalty fixed at 2.5 / min(m, n) unless config.beta0 is set.
LrrResult solve_ladm_lrr(const LrrProblem& problem, LrrConfig config = {});

/// Accelerated proximal gradient on
///   min beta (||Z||_* + mu ||E||_{2,1}) + 1/2 ||X - X Z - E||^2
/// with continuation beta <- max(beta_min, theta beta).
struct ApgConfig {
  double eps1 = 1e-4;
  double eps2 = 1e-5;
  double beta0 = 0.01;
  double beta_min = 1e-10;
  double theta = 0.9;
  /// Step constant; 0 means sigma_max(X)^2.
  double tau = 0.0;
  int max_iter = 2000;
  double lanczos_tol = 1e-10;
  std::uint64_t seed = 0xa96;

  /// Checks everything except the lower bound on tau, which needs X.
  void validate() const;
};

/// Same stopping rule as ADM with ||Z - J|| dropped.
LrrResult solve_apg_lrr(const LrrProblem& problem, const ApgConfig& config = {});

}  // namespace ladmap
