#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "ladmap/linalg.hpp"
#include "ladmap/trace.hpp"

namespace ladmap {

/// A linear map between matrix spaces together with its adjoint and an upper
/// bound on its squared operator norm.
struct LinearMap {
  using Fn = std::function<Matrix(const Matrix&)>;

  Fn apply;
  Fn adjoint;
  Index in_rows = 0, in_cols = 0;
  Index out_rows = 0, out_cols = 0;
  double norm_sq_bound = 0.0;

  static LinearMap identity(Index rows, Index cols);
  /// x -> s * x
  static LinearMap scaled_identity(Index rows, Index cols, double s);
  /// x -> A x for x with `cols` columns. ||A||^2 is estimated by power
  /// iteration and inflated by 1e-6 relative.
  static LinearMap left_multiply(Matrix A, Index cols);
};

/// Proximal oracle: argmin_z h(z) + (weight / 2) ||z - point||^2.
using ProxOracle = std::function<Matrix(const Matrix& point, double weight)>;
using Objective = std::function<double(const Matrix&)>;

/// min f(x) + g(y)  s.t.  A(x) + B(y) = c
struct SeparableProblem {
  LinearMap A;
  LinearMap B;
  Matrix c;
  ProxOracle prox_f;
  ProxOracle prox_g;
  Objective f;  // optional, only used for tracing
  Objective g;

  /// Shape and finiteness checks; ||c|| > 0 is required by the relative
  /// stopping residuals.
  void validate() const;
};

struct LadmapConfig {
  double eps1 = 1e-4;
  double eps2 = 1e-5;
  /// Defaults to min(rows(c), cols(c)) * eps2.
  std::optional<double> beta0;
  double beta_max = 1e10;
  double rho0 = 1.9;
  /// Default to 1.02 times the map's norm bound.
  std::optional<double> eta_A;
  std::optional<double> eta_B;
  int max_iter = 2000;
  std::uint64_t seed = 0;
};

/// Fills defaults and checks eta_A > ||A||^2, eta_B > ||B||^2,
/// beta_max >= beta0 > 0, rho0 >= 1. Throws ConfigError.
LadmapConfig resolve_config(const SeparableProblem& problem,
                            const LadmapConfig& config);

struct LadmapState {
  Matrix x;
  Matrix y;
  Matrix lambda;
  double beta = 0.0;
  int k = 0;
};

/// All-zero iterates with beta = beta0.
LadmapState initial_state(const SeparableProblem& problem,
                          const LadmapConfig& resolved);

// The functions below expect a config returned by resolve_config.

Matrix update_x(const SeparableProblem& problem, const LadmapConfig& config,
                const LadmapState& state);
Matrix update_y(const SeparableProblem& problem, const LadmapConfig& config,
                const LadmapState& state, const Matrix& x_new);
Matrix update_lambda(const SeparableProblem& problem, const LadmapState& state,
                     const Matrix& x_new, const Matrix& y_new);

/// beta_k max(sqrt(eta_a) dx, sqrt(eta_b) dy) / c_norm
double kkt2_residual(double beta, double sqrt_eta_a_dx, double sqrt_eta_b_dy,
                     double c_norm);

/// rho = rho0 if kkt2 < eps2 (strict), else 1; returns min(beta_max, rho beta).
double next_penalty(double beta, double kkt2, double eps2, double rho0,
                    double beta_max);

double update_beta(const LadmapConfig& config, const LadmapState& state,
                   double dx_norm, double dy_norm, double c_norm);

struct StopCheck {
  bool feasibility_ok = false;  // feasibility < eps1
  bool kkt2_ok = false;         // kkt2 <= eps2
  double feasibility = 0.0;
  double kkt2 = 0.0;
  bool done() const { return feasibility_ok && kkt2_ok; }
};

StopCheck check_stop(const SeparableProblem& problem, const LadmapConfig& config,
                     const LadmapState& state, const Matrix& x_new,
                     const Matrix& y_new);

struct LadmapResult {
  LadmapState state;
  ConvergenceTrace trace;
  Status status = Status::IterationCapped;
};

/// Called with the initial state and then after every iteration.
using LadmapObserver = std::function<void(const LadmapState&)>;

LadmapResult solve(const SeparableProblem& problem, const LadmapConfig& config,
                   std::optional<LadmapState> initial = std::nullopt,
                   const LadmapObserver& observer = {});

}  // namespace ladmap
