#include "ladmap/baselines.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>

#include "ladmap/random.hpp"

namespace ladmap {

void AdmConfig::validate() const {
  if (!(eps1 > 0.0) || !(eps2 > 0.0))
    throw ConfigError("ADM: eps1 and eps2 must be positive");
  if (!(beta0 > 0.0) || !(beta_max >= beta0))
    throw ConfigError("ADM: need beta_max >= beta0 > 0");
  if (!(rho >= 1.0)) throw ConfigError("ADM: rho must be >= 1");
  if (max_iter < 1) throw ConfigError("ADM: max_iter must be >= 1");
}

void ApgConfig::validate() const {
  if (!(eps1 > 0.0) || !(eps2 > 0.0))
    throw ConfigError("APG: eps1 and eps2 must be positive");
  if (!(beta_min > 0.0) || !(beta0 > beta_min))
    throw ConfigError("APG: need beta0 > beta_min > 0");
  if (!(theta > 0.0 && theta < 1.0)) throw ConfigError("APG: theta must lie in (0, 1)");
  if (!(tau >= 0.0) || !std::isfinite(tau)) throw ConfigError("APG: tau must be >= 0");
  if (max_iter < 1) throw ConfigError("APG: max_iter must be >= 1");
}

namespace {

LanczosOptions lanczos_at(double tol, std::uint64_t seed, int k) {
  LanczosOptions o;
  o.tol = tol;
  o.seed = derive_seed(seed, static_cast<std::uint64_t>(k));
  return o;
}

}  // namespace

LrrResult solve_adm_lrr(const LrrProblem& problem, const AdmConfig& config) {
  config.validate();
  const Matrix& X = problem.X;
  const Index m = problem.m(), n = problem.n();
  const double xn = problem.x_norm;

  Stopwatch clock;
  LrrResult result;

  const Matrix XtX = X.transpose() * X;
  const Eigen::LLT<Matrix> llt(Matrix::Identity(n, n) + XtX);
  ++result.factorizations;
  if (llt.info() != Eigen::Success) throw SolverError("ADM: I + X^T X not positive definite");

  Matrix Z = Matrix::Zero(n, n);
  Matrix E = Matrix::Zero(m, n);
  Matrix L1 = Matrix::Zero(m, n);
  Matrix L2 = Matrix::Zero(n, n);
  SkinnySvd J = SkinnySvd::zero(n, n);
  double beta = config.beta0;
  Index hint = std::min<Index>(10, n);

  for (int k = 0; k < config.max_iter; ++k) {
    const Matrix G = Z + L2 / beta;
    ZUpdate jup = svt_with_rank_growth(ImplicitOperator::wrap(G), 1.0 / beta, hint,
                                       lanczos_at(config.lanczos_tol, config.seed, k));
    J = std::move(jup.Z);
    hint = predict_rank(jup.kept, n, jup.rank_used);

    Matrix rhs = XtX - X.transpose() * E + J.dense() +
                 (X.transpose() * L1 - L2) / beta;
    Matrix Z_new = llt.solve(rhs);
    const Matrix XZ = X * Z_new;
    Matrix E_new = l21_shrink(X - XZ + L1 / beta, ShrinkThreshold(problem.mu / beta));

    const Matrix leq1 = X - XZ - E_new;
    const Matrix leq2 = Z_new - J.dense();

    TraceRecord rec;
    rec.k = k;
    rec.beta = beta;
    rec.feasibility = leq1.norm() / xn;
    rec.dx_norm = (E_new - E).norm();
    rec.dy_norm = (Z_new - Z).norm();
    rec.kkt2 = std::max(rec.dx_norm, rec.dy_norm) / xn;
    rec.dlambda_norm = beta * std::hypot(leq1.norm(), leq2.norm());
    rec.rank = static_cast<long>(J.rank());
    const double split = leq2.norm() / xn;

    L1 += beta * leq1;
    L2 += beta * leq2;
    beta = std::min(config.beta_max, config.rho * beta);
    Z = std::move(Z_new);
    E = std::move(E_new);

    rec.objective = problem.objective(E, J);
    rec.time_ms = clock.elapsed_ms();
    result.trace.records.push_back(rec);
    result.iterations = k + 1;

    if (rec.feasibility <= config.eps1 && split <= config.eps1 &&
        rec.kkt2 <= config.eps2) {
      result.status = Status::Converged;
      break;
    }
  }

  result.seconds = clock.elapsed_ms() / 1000.0;
  result.E = std::move(E);
  result.Z = std::move(J);
  result.Lambda = std::move(L1);
  return result;
}

LrrResult solve_ladm_lrr(const LrrProblem& problem, LrrConfig config) {
  config.penalty = PenaltyRule::Fixed;
  if (!config.beta0)
    config.beta0 = 2.5 / static_cast<double>(std::min(problem.m(), problem.n()));
  return solve_lrr(problem, config, LrrMode::Standard);
}

LrrResult solve_apg_lrr(const LrrProblem& problem, const ApgConfig& config) {
  config.validate();
  const Matrix& X = problem.X;
  const Index m = problem.m(), n = problem.n();
  const double xn = problem.x_norm;
  const double sigma_sq = spectral_norm_sq(X);
  const double tau = config.tau > 0.0 ? config.tau : sigma_sq;
  if (tau < sigma_sq * (1.0 - 1e-9))
    throw ConfigError("APG: tau must be >= sigma_max(X)^2");

  Stopwatch clock;
  LrrResult result;

  Matrix Z = Matrix::Zero(n, n), Z_prev = Z;
  Matrix E = Matrix::Zero(m, n), E_prev = E;
  SkinnySvd Zs = SkinnySvd::zero(n, n);
  double t = 1.0, t_prev = 1.0;
  double beta = config.beta0;
  Index hint = std::min<Index>(10, n);

  for (int k = 0; k < config.max_iter; ++k) {
    const double w = (t_prev - 1.0) / t;
    const Matrix YZ = Z + w * (Z - Z_prev);
    const Matrix YE = E + w * (E - E_prev);
    const Matrix R = X - X * YZ - YE;

    const Matrix GZ = YZ + X.transpose() * R / tau;
    ZUpdate zup = svt_with_rank_growth(ImplicitOperator::wrap(GZ), beta / tau, hint,
                                       lanczos_at(config.lanczos_tol, config.seed, k));
    hint = predict_rank(zup.kept, n, zup.rank_used);
    Matrix E_new = l21_shrink(YE + R / tau, ShrinkThreshold(beta * problem.mu / tau));
    Matrix Z_new = zup.Z.dense();

    TraceRecord rec;
    rec.k = k;
    rec.beta = beta;
    rec.feasibility = (X - X * Z_new - E_new).norm() / xn;
    rec.dx_norm = (E_new - E).norm();
    rec.dy_norm = (Z_new - Z).norm();
    rec.kkt2 = std::max(rec.dx_norm, rec.dy_norm) / xn;
    rec.rank = static_cast<long>(zup.Z.rank());

    Z_prev = std::move(Z);
    E_prev = std::move(E);
    Z = std::move(Z_new);
    E = std::move(E_new);
    Zs = std::move(zup.Z);
    const double t_next = (1.0 + std::sqrt(1.0 + 4.0 * t * t)) / 2.0;
    t_prev = t;
    t = t_next;
    beta = std::max(config.beta_min, config.theta * beta);

    rec.objective = problem.objective(E, Zs);
    rec.time_ms = clock.elapsed_ms();
    result.trace.records.push_back(rec);
    result.iterations = k + 1;

    if (rec.feasibility <= config.eps1 && rec.kkt2 <= config.eps2) {
      result.status = Status::Converged;
      break;
    }
  }

  result.seconds = clock.elapsed_ms() / 1000.0;
  result.E = std::move(E);
  result.Z = std::move(Zs);
  result.Lambda = Matrix::Zero(m, n);
  return result;
}

}  // namespace ladmap
