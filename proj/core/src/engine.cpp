#include "ladmap/engine.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

namespace ladmap {

LinearMap LinearMap::identity(Index rows, Index cols) {
  return scaled_identity(rows, cols, 1.0);
}

LinearMap LinearMap::scaled_identity(Index rows, Index cols, double s) {
  LinearMap m;
  m.apply = [s](const Matrix& x) -> Matrix { return s * x; };
  m.adjoint = m.apply;
  m.in_rows = m.out_rows = rows;
  m.in_cols = m.out_cols = cols;
  m.norm_sq_bound = s * s;
  return m;
}

LinearMap LinearMap::left_multiply(Matrix A, Index cols) {
  LinearMap m;
  m.in_rows = A.cols();
  m.out_rows = A.rows();
  m.in_cols = m.out_cols = cols;
  m.norm_sq_bound = spectral_norm_sq(A) * (1.0 + 1e-6);
  auto shared = std::make_shared<const Matrix>(std::move(A));
  m.apply = [shared](const Matrix& x) -> Matrix { return *shared * x; };
  m.adjoint = [shared](const Matrix& u) -> Matrix {
    return shared->transpose() * u;
  };
  return m;
}

void SeparableProblem::validate() const {
  if (!A.apply || !A.adjoint || !B.apply || !B.adjoint)
    throw InputError("SeparableProblem: linear maps must be set");
  if (!prox_f || !prox_g)
    throw InputError("SeparableProblem: proximal oracles must be set");
  if (A.out_rows != c.rows() || A.out_cols != c.cols() ||
      B.out_rows != c.rows() || B.out_cols != c.cols())
    throw InputError("SeparableProblem: A(x) + B(y) and c differ in shape");
  require_finite(c, "SeparableProblem::c");
  if (!(c.norm() > 0.0))
    throw ConfigError(
        "SeparableProblem: ||c|| = 0 leaves the relative residuals undefined");
}

LadmapConfig resolve_config(const SeparableProblem& problem,
                            const LadmapConfig& config) {
  problem.validate();
  LadmapConfig r = config;
  if (!(r.eps1 > 0.0) || !(r.eps2 > 0.0))
    throw ConfigError("eps1 and eps2 must be positive");
  if (!r.beta0)
    r.beta0 = static_cast<double>(std::min(problem.c.rows(), problem.c.cols())) *
              r.eps2;
  if (!r.eta_A) r.eta_A = 1.02 * problem.A.norm_sq_bound;
  if (!r.eta_B) r.eta_B = 1.02 * problem.B.norm_sq_bound;
  if (!(*r.beta0 > 0.0)) throw ConfigError("beta0 must be positive");
  if (!(r.beta_max >= *r.beta0)) throw ConfigError("beta_max must be >= beta0");
  if (!(r.rho0 >= 1.0)) throw ConfigError("rho0 must be >= 1");
  if (!(*r.eta_A > problem.A.norm_sq_bound))
    throw ConfigError("eta_A must exceed ||A||^2 (" +
                      std::to_string(problem.A.norm_sq_bound) + ")");
  if (!(*r.eta_B > problem.B.norm_sq_bound))
    throw ConfigError("eta_B must exceed ||B||^2 (" +
                      std::to_string(problem.B.norm_sq_bound) + ")");
  if (r.max_iter < 1) throw ConfigError("max_iter must be >= 1");
  return r;
}

LadmapState initial_state(const SeparableProblem& problem,
                          const LadmapConfig& resolved) {
  LadmapState s;
  s.x = Matrix::Zero(problem.A.in_rows, problem.A.in_cols);
  s.y = Matrix::Zero(problem.B.in_rows, problem.B.in_cols);
  s.lambda = Matrix::Zero(problem.c.rows(), problem.c.cols());
  s.beta = resolved.beta0.value();
  s.k = 0;
  return s;
}

namespace {

double require(const std::optional<double>& v, const char* name) {
  if (!v) throw ConfigError(std::string(name) + " unset; call resolve_config");
  return *v;
}

}  // namespace

Matrix update_x(const SeparableProblem& problem, const LadmapConfig& config,
                const LadmapState& state) {
  const double eta = require(config.eta_A, "eta_A");
  const double beta = state.beta;
  const Matrix residual =
      problem.A.apply(state.x) + problem.B.apply(state.y) - problem.c;
  const Matrix point =
      state.x - problem.A.adjoint(state.lambda + beta * residual) / (beta * eta);
  return problem.prox_f(point, beta * eta);
}

Matrix update_y(const SeparableProblem& problem, const LadmapConfig& config,
                const LadmapState& state, const Matrix& x_new) {
  const double eta = require(config.eta_B, "eta_B");
  const double beta = state.beta;
  const Matrix residual =
      problem.A.apply(x_new) + problem.B.apply(state.y) - problem.c;
  const Matrix point =
      state.y - problem.B.adjoint(state.lambda + beta * residual) / (beta * eta);
  return problem.prox_g(point, beta * eta);
}

Matrix update_lambda(const SeparableProblem& problem, const LadmapState& state,
                     const Matrix& x_new, const Matrix& y_new) {
  return state.lambda +
         state.beta * (problem.A.apply(x_new) + problem.B.apply(y_new) - problem.c);
}

double kkt2_residual(double beta, double sqrt_eta_a_dx, double sqrt_eta_b_dy,
                     double c_norm) {
  return beta * std::max(sqrt_eta_a_dx, sqrt_eta_b_dy) / c_norm;
}

double next_penalty(double beta, double kkt2, double eps2, double rho0,
                    double beta_max) {
  const double rho = (kkt2 < eps2) ? rho0 : 1.0;
  return std::min(beta_max, rho * beta);
}

double update_beta(const LadmapConfig& config, const LadmapState& state,
                   double dx_norm, double dy_norm, double c_norm) {
  const double kkt2 =
      kkt2_residual(state.beta, std::sqrt(require(config.eta_A, "eta_A")) * dx_norm,
                    std::sqrt(require(config.eta_B, "eta_B")) * dy_norm, c_norm);
  return next_penalty(state.beta, kkt2, config.eps2, config.rho0,
                      config.beta_max);
}

StopCheck check_stop(const SeparableProblem& problem, const LadmapConfig& config,
                     const LadmapState& state, const Matrix& x_new,
                     const Matrix& y_new) {
  const double c_norm = problem.c.norm();
  StopCheck s;
  s.feasibility =
      (problem.A.apply(x_new) + problem.B.apply(y_new) - problem.c).norm() / c_norm;
  s.kkt2 = kkt2_residual(
      state.beta, std::sqrt(require(config.eta_A, "eta_A")) * (x_new - state.x).norm(),
      std::sqrt(require(config.eta_B, "eta_B")) * (y_new - state.y).norm(), c_norm);
  s.feasibility_ok = s.feasibility < config.eps1;
  s.kkt2_ok = s.kkt2 <= config.eps2;
  return s;
}

LadmapResult solve(const SeparableProblem& problem, const LadmapConfig& config,
                   std::optional<LadmapState> initial,
                   const LadmapObserver& observer) {
  const LadmapConfig cfg = resolve_config(problem, config);
  LadmapResult result;
  LadmapState state = initial ? std::move(*initial) : initial_state(problem, cfg);
  if (state.beta <= 0.0) state.beta = *cfg.beta0;
  if (observer) observer(state);

  const double c_norm = problem.c.norm();
  const bool has_objective = static_cast<bool>(problem.f) && static_cast<bool>(problem.g);
  Stopwatch clock;

  for (int it = 0; it < cfg.max_iter; ++it) {
    Matrix x_new = update_x(problem, cfg, state);
    Matrix y_new = update_y(problem, cfg, state, x_new);
    Matrix lambda_new = update_lambda(problem, state, x_new, y_new);
    const StopCheck stop = check_stop(problem, cfg, state, x_new, y_new);

    TraceRecord rec;
    rec.k = state.k;
    rec.feasibility = stop.feasibility;
    rec.kkt2 = stop.kkt2;
    rec.beta = state.beta;
    rec.dx_norm = (x_new - state.x).norm();
    rec.dy_norm = (y_new - state.y).norm();
    rec.dlambda_norm = (lambda_new - state.lambda).norm();

    const double beta_new = update_beta(cfg, state, rec.dx_norm, rec.dy_norm, c_norm);
    state.x = std::move(x_new);
    state.y = std::move(y_new);
    state.lambda = std::move(lambda_new);
    state.beta = beta_new;
    state.k += 1;

    if (has_objective) rec.objective = problem.f(state.x) + problem.g(state.y);
    rec.time_ms = clock.elapsed_ms();
    result.trace.records.push_back(rec);
    if (observer) observer(state);

    if (stop.done()) {
      result.status = Status::Converged;
      break;
    }
  }
  result.state = std::move(state);
  return result;
}

}  // namespace ladmap
