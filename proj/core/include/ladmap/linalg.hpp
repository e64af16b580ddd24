#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <optional>

#include "ladmap/errors.hpp"

namespace ladmap {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Throws InputError unless every entry of `m` is finite.
void require_finite(const Eigen::Ref<const Matrix>& m, const char* what);

/// Factored low-rank matrix U diag(sigma) V^T with orthonormal U, V and a
/// positive non-increasing sigma. Rank zero (empty factors) is the zero matrix.
struct SkinnySvd {
  Matrix U;      // rows x r
  Vector sigma;  // r
  Matrix V;      // cols x r

  static SkinnySvd zero(Index rows, Index cols);

  Index rank() const { return sigma.size(); }
  Index rows() const { return U.rows(); }
  Index cols() const { return V.rows(); }

  Matrix dense() const;
  double frobenius_norm() const { return sigma.norm(); }
  double nuclear_norm() const { return sigma.sum(); }

  /// Checks orthonormality of U and V entrywise within `tol` and the ordering
  /// and positivity of sigma.
  bool is_valid(double tol = 1e-10) const;
};

/// ||A - B||_F computed from the factors only. Uses the Gram-product identity
/// ||A||^2 + ||B||^2 - 2<A,B>; when that suffers cancellation it re-evaluates
/// through thin QR of the stacked factors. Never forms an n x n matrix.
double frobenius_distance(const SkinnySvd& a, const SkinnySvd& b);

/// <A, B>_F from factors, O(r_a r_b (m + n)).
double frobenius_inner(const SkinnySvd& a, const SkinnySvd& b);

/// A linear operator known only through v -> N v and u -> N^T u.
class ImplicitOperator {
 public:
  using Apply = std::function<Vector(const Vector&)>;

  ImplicitOperator(Index rows, Index cols, Apply apply, Apply apply_adjoint);

  /// Wraps an explicit matrix. The matrix is captured by reference; it must
  /// outlive the operator.
  static ImplicitOperator wrap(const Matrix& m);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }

  Vector apply(const Vector& v) const;
  Vector apply_adjoint(const Vector& u) const;

  ImplicitOperator adjoint() const;

 private:
  Index rows_;
  Index cols_;
  Apply apply_;
  Apply adjoint_;
};

/// Largest |<Nv,u> - <v,N^T u>| / (||Nv|| ||u|| + ||v|| ||N^T u||) over
/// `probes` seeded random pairs.
double adjoint_mismatch(const ImplicitOperator& op, int probes,
                        std::uint64_t seed);

/// Estimate of sigma_max(X)^2 by power iteration on X^T X. Stops once the
/// eigen-residual ||X^T X v - lambda v|| drops below tol * lambda.
double spectral_norm_sq(const Matrix& X, double tol = 1e-10,
                        int max_iter = 1000, std::uint64_t seed = 0x5eed);

/// X * Z evaluated as ((X U) diag(sigma)) V^T.
Matrix skinny_matmul_left(const Matrix& X, const SkinnySvd& Z);

struct LanczosOptions {
  double tol = 1e-10;
  /// Lanczos step cap; 0 means min(rows, cols), where the recurrence is exact.
  int max_steps = 0;
  std::uint64_t seed = 0x1a2c05;
};

/// Top-k singular triplets. Unlike SkinnySvd, trailing singular values may be
/// zero (the operator has smaller rank than requested).
struct PartialSvd {
  Matrix U;
  Vector sigma;
  Matrix V;
  int steps = 0;
  bool converged = false;
  /// Largest Ritz residual bound among the returned triplets.
  double max_residual = 0.0;
};

/// Thrown when the step cap is hit; carries the best Ritz triplets so far.
class ConvergenceError : public SolverError {
 public:
  ConvergenceError(const std::string& what, PartialSvd best)
      : SolverError(what), best_(std::move(best)) {}
  const PartialSvd& best() const { return best_; }

 private:
  PartialSvd best_;
};

/// Golub-Kahan-Lanczos bidiagonalization with full reorthogonalization.
/// Only touches the operator through apply/apply_adjoint.
PartialSvd lanczos_partial_svd(const ImplicitOperator& op, Index k,
                               const LanczosOptions& options = {});

}  // namespace ladmap
