#include "ladmap/lrr.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "ladmap/engine.hpp"
#include "ladmap/random.hpp"

namespace ladmap {

LrrProblem LrrProblem::make(Matrix X, double mu, std::optional<double> eta_X) {
  if (X.rows() < 1 || X.cols() < 1) throw InputError("LRR: X is empty");
  require_finite(X, "LRR data matrix");
  if (!(mu >= 0.0) || !std::isfinite(mu)) throw InputError("LRR: mu must be >= 0");
  LrrProblem p;
  p.X = std::move(X);
  p.mu = mu;
  p.x_norm = p.X.norm();
  if (!(p.x_norm > 0.0))
    throw ConfigError("LRR: ||X|| = 0 leaves the relative residuals undefined");
  const double sigma_sq = spectral_norm_sq(p.X);
  p.eta_X = eta_X.value_or(1.02 * sigma_sq);
  if (!(p.eta_X > sigma_sq))
    throw ConfigError("LRR: eta_X must exceed sigma_max(X)^2");
  return p;
}

double LrrProblem::objective(const Matrix& E, const SkinnySvd& Z) const {
  return Z.nuclear_norm() + mu * l21_norm(E);
}

const char* to_string(LrrMode mode) {
  return mode == LrrMode::Standard ? "standard" : "accelerated";
}

LrrState initial_lrr_state(const LrrProblem& problem, const LrrConfig& config) {
  LrrState s;
  s.E = Matrix::Zero(problem.m(), problem.n());
  s.Z = SkinnySvd::zero(problem.n(), problem.n());
  s.Lambda = Matrix::Zero(problem.m(), problem.n());
  s.beta = config.beta0.value_or(
      static_cast<double>(std::min(problem.m(), problem.n())) * config.eps2);
  s.k = 0;
  s.predicted_rank = config.initial_rank > 0
                         ? std::min(config.initial_rank, problem.n())
                         : std::min<Index>(10, problem.n());
  return s;
}

Matrix compute_M(const LrrProblem& problem, const LrrState& state,
                 LrrMode mode) {
  Matrix M = problem.X - state.Lambda / state.beta;
  if (state.Z.rank() == 0) return M;
  if (mode == LrrMode::Accelerated) {
    M -= skinny_matmul_left(problem.X, state.Z);
  } else {
    M.noalias() -= problem.X * state.Z.dense();
  }
  return M;
}

Matrix update_E(const LrrProblem& problem, const LrrState& state,
                const Matrix& M) {
  return l21_shrink(M, ShrinkThreshold(problem.mu / state.beta));
}

Matrix update_E(const LrrProblem& problem, const LrrState& state) {
  return update_E(problem, state, compute_M(problem, state));
}

ImplicitOperator nk_operator_from_residual(const LrrProblem& problem,
                                           const SkinnySvd& Z, Matrix D) {
  const Matrix* X = &problem.X;
  const double inv_eta = 1.0 / problem.eta_X;
  auto d = std::make_shared<const Matrix>(std::move(D));
  auto z = std::make_shared<const SkinnySvd>(Z);
  const Index n = problem.n();

  auto apply = [X, inv_eta, d, z](const Vector& v) -> Vector {
    // Z v - eta^{-1} X^T (D v)
    Vector out = -inv_eta * (X->transpose() * (*d * v));
    if (z->rank() > 0)
      out.noalias() += z->U * z->sigma.cwiseProduct(z->V.transpose() * v);
    return out;
  };
  auto adjoint = [X, inv_eta, d, z](const Vector& u) -> Vector {
    // Z^T u - eta^{-1} D^T (X u)
    Vector out = -inv_eta * (d->transpose() * (*X * u));
    if (z->rank() > 0)
      out.noalias() += z->V * z->sigma.cwiseProduct(z->U.transpose() * u);
    return out;
  };
  return ImplicitOperator(n, n, std::move(apply), std::move(adjoint));
}

ImplicitOperator nk_operator(const LrrProblem& problem, const LrrState& state,
                             const Matrix& E_new) {
  Matrix D = E_new - problem.X + state.Lambda / state.beta;
  if (state.Z.rank() > 0) D += skinny_matmul_left(problem.X, state.Z);
  return nk_operator_from_residual(problem, state.Z, std::move(D));
}

Matrix nk_dense(const LrrProblem& problem, const LrrState& state,
                const Matrix& E_new) {
  const Matrix Zd = state.Z.dense();
  const Matrix D = problem.X * Zd + E_new - problem.X + state.Lambda / state.beta;
  return Zd - problem.X.transpose() * D / problem.eta_X;
}

Index predict_rank(Index previous_kept, Index n, Index current_predicted) {
  if (previous_kept < current_predicted)
    return std::min<Index>(previous_kept + 1, n);
  const Index step = static_cast<Index>(std::ceil(0.05 * static_cast<double>(n)));
  return std::min<Index>(previous_kept + step, n);
}

ZUpdate svt_with_rank_growth(const ImplicitOperator& op, double tau,
                             Index rank_hint, const LanczosOptions& options) {
  const Index n = std::min(op.rows(), op.cols());
  Index sv = std::clamp<Index>(rank_hint, 1, n);
  ZUpdate out;
  for (;;) {
    SvtResult r = svt(op, ShrinkThreshold(tau), sv, options);
    out.lanczos_steps += r.lanczos_steps;
    if (!r.rank_hint_too_small || sv == n) {
      out.Z = std::move(r.Z);
      out.kept = r.kept;
      out.rank_used = sv;
      return out;
    }
    sv = out.enlargements == 0 ? predict_rank(r.kept, n, sv)
                               : std::min<Index>(2 * sv, n);
    ++out.enlargements;
  }
}

namespace {

LanczosOptions lanczos_for(const LrrConfig& config, int k) {
  LanczosOptions o;
  o.tol = config.lanczos_tol;
  o.seed = derive_seed(config.seed, static_cast<std::uint64_t>(k));
  return o;
}

double threshold(const LrrProblem& problem, const LrrState& state) {
  return 1.0 / (state.beta * problem.eta_X);
}

}  // namespace

ZUpdate update_Z(const LrrProblem& problem, const LrrState& state,
                 const Matrix& E_new, LrrMode mode, const LrrConfig& config) {
  const LanczosOptions opts = lanczos_for(config, state.k);
  if (mode == LrrMode::Accelerated) {
    return svt_with_rank_growth(nk_operator(problem, state, E_new),
                                threshold(problem, state), state.predicted_rank,
                                opts);
  }
  const Matrix N = nk_dense(problem, state, E_new);
  return svt_with_rank_growth(ImplicitOperator::wrap(N),
                              threshold(problem, state), state.predicted_rank,
                              opts);
}

Matrix update_Lambda(const LrrProblem& problem, const LrrState& state,
                     const Matrix& E_new, const SkinnySvd& Z_new) {
  return state.Lambda +
         state.beta * (skinny_matmul_left(problem.X, Z_new) + E_new - problem.X);
}

LrrResult solve_lrr(const LrrProblem& problem, const LrrConfig& config,
                    LrrMode mode, const LrrObserver& observer) {
  if (!(config.eps1 > 0.0) || !(config.eps2 > 0.0))
    throw ConfigError("LRR: eps1 and eps2 must be positive");
  if (!(config.rho0 >= 1.0)) throw ConfigError("LRR: rho0 must be >= 1");
  if (config.max_iter < 1) throw ConfigError("LRR: max_iter must be >= 1");

  LrrState state = initial_lrr_state(problem, config);
  if (!(state.beta > 0.0)) throw ConfigError("LRR: beta0 must be positive");
  if (config.penalty == PenaltyRule::Adaptive && !(config.beta_max >= state.beta))
    throw ConfigError("LRR: beta_max must be >= beta0");
  if (observer) observer(state);

  const Index n = problem.n();
  const double sqrt_eta = std::sqrt(problem.eta_X);
  LrrResult result;
  Stopwatch clock;

  for (int it = 0; it < config.max_iter; ++it) {
    const bool dense = (mode == LrrMode::Standard);
    const LanczosOptions opts = lanczos_for(config, state.k);

    // Step 1: E update on M_k.
    Matrix Zd;
    Matrix M = problem.X - state.Lambda / state.beta;
    if (state.Z.rank() > 0) {
      if (dense) {
        Zd = state.Z.dense();
        ++result.dense_nn_formed;
        M.noalias() -= problem.X * Zd;
      } else {
        M -= skinny_matmul_left(problem.X, state.Z);
      }
    }
    Matrix E_new = update_E(problem, state, M);

    // Step 2: partial SVD of N_k. X Z_k + E_{k+1} - X + Lambda_k / beta_k
    // equals E_{k+1} - M_k.
    M = E_new - M;
    ZUpdate zup;
    if (dense) {
      Matrix N = -(problem.X.transpose() * M) / problem.eta_X;
      if (state.Z.rank() > 0) N += Zd;
      ++result.dense_nn_formed;
      zup = svt_with_rank_growth(ImplicitOperator::wrap(N),
                                 threshold(problem, state),
                                 state.predicted_rank, opts);
    } else {
      zup = svt_with_rank_growth(
          nk_operator_from_residual(problem, state.Z, std::move(M)),
          threshold(problem, state), state.predicted_rank, opts);
    }

    // Step 3: multiplier.
    Matrix residual = E_new - problem.X;
    if (zup.Z.rank() > 0) {
      if (dense) {
        residual.noalias() += problem.X * zup.Z.dense();
        ++result.dense_nn_formed;
      } else {
        residual += skinny_matmul_left(problem.X, zup.Z);
      }
    }

    TraceRecord rec;
    rec.k = state.k;
    rec.beta = state.beta;
    rec.feasibility = residual.norm() / problem.x_norm;
    rec.dx_norm = (E_new - state.E).norm();
    rec.dy_norm = frobenius_distance(zup.Z, state.Z);
    rec.dlambda_norm = state.beta * residual.norm();
    rec.kkt2 = kkt2_residual(state.beta, rec.dx_norm, sqrt_eta * rec.dy_norm,
                             problem.x_norm);
    rec.rank = static_cast<long>(zup.Z.rank());

    state.Lambda += state.beta * residual;
    state.E = std::move(E_new);
    state.Z = std::move(zup.Z);

    // Step 4: penalty.
    if (config.penalty == PenaltyRule::Adaptive)
      state.beta = next_penalty(state.beta, rec.kkt2, config.eps2, config.rho0,
                                config.beta_max);
    state.predicted_rank = predict_rank(zup.kept, n, zup.rank_used);
    result.predicted_ranks.push_back(state.predicted_rank);
    state.k += 1;

    rec.objective = problem.objective(state.E, state.Z);
    rec.time_ms = clock.elapsed_ms();
    result.trace.records.push_back(rec);
    if (observer) observer(state);

    const double rel_change = std::max(rec.dx_norm, rec.dy_norm) / problem.x_norm;
    const bool kkt_ok = rec.kkt2 <= config.eps2;
    const bool change_ok = rel_change <= config.eps2;
    const bool second_ok = config.stop_rule == StopRule::Kkt              ? kkt_ok
                           : config.stop_rule == StopRule::RelativeChange ? change_ok
                                                                          : kkt_ok && change_ok;
    if (config.stop_on_criteria && rec.feasibility < config.eps1 && second_ok) {
      result.status = Status::Converged;
      break;
    }
  }

  result.iterations = state.k;
  result.seconds = clock.elapsed_ms() / 1000.0;
  result.E = std::move(state.E);
  result.Z = std::move(state.Z);
  result.Lambda = std::move(state.Lambda);
  return result;
}

}  // namespace ladmap
