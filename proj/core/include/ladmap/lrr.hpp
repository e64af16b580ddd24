#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ladmap/linalg.hpp"
#include "ladmap/prox.hpp"
#include "ladmap/trace.hpp"

namespace ladmap {

/// min ||Z||_* + mu ||E||_{2,1}  s.t.  X = X Z + E
struct LrrProblem {
  Matrix X;
  double mu = 0.1;
  double eta_X = 0.0;  // must exceed sigma_max(X)^2
  double x_norm = 0.0;

  /// eta_X defaults to 1.02 sigma_max(X)^2. Throws InputError/ConfigError.
  static LrrProblem make(Matrix X, double mu,
                         std::optional<double> eta_X = std::nullopt);

  Index m() const { return X.rows(); }
  Index n() const { return X.cols(); }
  double objective(const Matrix& E, const SkinnySvd& Z) const;
};

/// How N_k is handed to the partial SVD.
enum class LrrMode {
  Standard,     // N_k formed densely, O(n^3) per iteration
  Accelerated,  // N_k applied implicitly through its factors, O(r n^2)
};

const char* to_string(LrrMode mode);

enum class PenaltyRule { Adaptive, Fixed };

/// Second stopping test, applied together with feasibility < eps1.
enum class StopRule {
  Kkt,             // beta_k max(sqrt(eta_X)||dZ||, ||dE||) / ||X|| <= eps2
  RelativeChange,  // max(||dZ||, ||dE||) / ||X|| <= eps2
  Both,
};

struct LrrConfig {
  double eps1 = 1e-4;
  double eps2 = 1e-5;
  /// Defaults to min(m, n) * eps2.
  std::optional<double> beta0;
  double beta_max = 1e10;
  double rho0 = 1.9;
  int max_iter = 2000;
  /// When false the solver runs exactly max_iter iterations.
  bool stop_on_criteria = true;
  PenaltyRule penalty = PenaltyRule::Adaptive;
  StopRule stop_rule = StopRule::Kkt;
  double lanczos_tol = 1e-10;
  /// Initial partial-SVD size; 0 means min(10, n).
  Index initial_rank = 0;
  std::uint64_t seed = 0x11aa;
};

struct LrrState {
  Matrix E;
  SkinnySvd Z;
  Matrix Lambda;
  double beta = 0.0;
  int k = 0;
  Index predicted_rank = 1;
};

LrrState initial_lrr_state(const LrrProblem& problem, const LrrConfig& config);

/// M_k = X - X Z_k - Lambda_k / beta_k, with X Z_k taken in factored order
/// (accelerated) or through the dense Z_k (standard).
Matrix compute_M(const LrrProblem& problem, const LrrState& state,
                 LrrMode mode = LrrMode::Accelerated);

/// E_{k+1} = l21_shrink(M_k, mu / beta_k).
Matrix update_E(const LrrProblem& problem, const LrrState& state,
                const Matrix& M);
Matrix update_E(const LrrProblem& problem, const LrrState& state);

/// N_k = Z_k - eta^{-1} X^T (X Z_k + E_{k+1} - X + Lambda_k / beta_k)
/// as an implicit n x n operator. Holds a copy of the m x n matrix
/// D = X Z_k + E_{k+1} - X + Lambda_k / beta_k and the skinny factors of Z_k;
/// X is referenced, so `problem` must outlive the operator.
ImplicitOperator nk_operator(const LrrProblem& problem, const LrrState& state,
                             const Matrix& E_new);

/// Same operator, built from D = E_{k+1} - M_k (identical by definition of M_k).
ImplicitOperator nk_operator_from_residual(const LrrProblem& problem,
                                           const SkinnySvd& Z, Matrix D);

/// N_k formed densely. O(m n^2).
Matrix nk_dense(const LrrProblem& problem, const LrrState& state,
                const Matrix& E_new);

/// Next partial-SVD size from the number of singular values kept.
Index predict_rank(Index previous_kept, Index n, Index current_predicted);

struct ZUpdate {
  SkinnySvd Z;
  Index kept = 0;
  /// Partial-SVD size actually used after any enlargement.
  Index rank_used = 0;
  int enlargements = 0;
  int lanczos_steps = 0;
};

/// Singular value thresholding of an n x n operator at threshold `tau`,
/// starting from `rank_hint` triplets. When all computed values exceed the
/// threshold, retries once at predict_rank's enlarged size, then doubles
/// until the spectrum crosses the threshold or the size reaches n.
ZUpdate svt_with_rank_growth(const ImplicitOperator& op, double tau,
                             Index rank_hint, const LanczosOptions& options);

/// Step 2 of the accelerated iteration: partial SVD of N_k with threshold
/// (beta_k eta_X)^{-1}.
ZUpdate update_Z(const LrrProblem& problem, const LrrState& state,
                 const Matrix& E_new, LrrMode mode, const LrrConfig& config);

/// Lambda_k + beta_k (X Z_{k+1} + E_{k+1} - X).
Matrix update_Lambda(const LrrProblem& problem, const LrrState& state,
                     const Matrix& E_new, const SkinnySvd& Z_new);

struct LrrResult {
  Matrix E;
  SkinnySvd Z;
  Matrix Lambda;
  ConvergenceTrace trace;
  Status status = Status::IterationCapped;
  int iterations = 0;
  double seconds = 0.0;
  std::vector<Index> predicted_ranks;
  /// Dense n x n matrices formed by the iteration (Z_k or N_k). Zero in
  /// accelerated mode.
  long dense_nn_formed = 0;
  /// Cholesky factorizations performed (ADM only).
  int factorizations = 0;
};

using LrrObserver = std::function<void(const LrrState&)>;

LrrResult solve_lrr(const LrrProblem& problem, const LrrConfig& config,
                    LrrMode mode, const LrrObserver& observer = {});

}  // namespace ladmap
