#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <string>

#include "ladmap/linalg.hpp"
#include "ladmap/random.hpp"

namespace ladmap {

namespace {

// Two passes of classical Gram-Schmidt against the first `count` columns.
void reorthogonalize(const Matrix& basis, Index count, Vector& x) {
  if (count == 0) return;
  for (int pass = 0; pass < 2; ++pass) {
    const Vector coeff = basis.leftCols(count).transpose() * x;
    x.noalias() -= basis.leftCols(count) * coeff;
  }
}

// Unit vector orthogonal to the first `count` columns of `basis`, used to
// continue the recurrence after an invariant subspace has been exhausted.
Vector fresh_direction(const Matrix& basis, Index count, Rng& rng) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    Vector x = gaussian_vector(basis.rows(), rng);
    reorthogonalize(basis, count, x);
    const double n = x.norm();
    if (n > 1e-8) return x / n;
  }
  throw SolverError("lanczos: could not extend orthonormal basis");
}

struct Ritz {
  Vector theta;
  Matrix P;  // left singular vectors of B
  Matrix Q;  // right singular vectors of B
};

Ritz bidiagonal_svd(const Vector& alpha, const Vector& beta, Index j) {
  Matrix B = Matrix::Zero(j, j);
  for (Index i = 0; i < j; ++i) {
    B(i, i) = alpha[i];
    if (i + 1 < j) B(i, i + 1) = beta[i];
  }
  Eigen::BDCSVD<Matrix> svd(B, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {svd.singularValues(), svd.matrixU(), svd.matrixV()};
}

// Convergence test only: top-k eigenpairs of the tridiagonal B B^T, which is
// much cheaper than a full bidiagonal SVD. Returns theta_1 and the last row of
// the top-k left vectors, largest first.
struct RitzTail {
  double sigma1 = 0.0;
  Vector last_row;
};

RitzTail ritz_tail(const Vector& alpha, const Vector& beta, Index j, Index k) {
  Vector diag(j), sub(std::max<Index>(j - 1, 0));
  for (Index i = 0; i < j; ++i) {
    diag[i] = alpha[i] * alpha[i];
    if (i + 1 < j) {
      diag[i] += beta[i] * beta[i];
      sub[i] = beta[i] * alpha[i + 1];
    }
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  RitzTail t;
  t.sigma1 = std::sqrt(std::max(es.eigenvalues()[j - 1], 0.0));
  t.last_row.resize(k);
  for (Index i = 0; i < k; ++i) t.last_row[i] = es.eigenvectors()(j - 1, j - 1 - i);
  return t;
}

PartialSvd extract(const Matrix& Ubasis, const Matrix& Vbasis,
                   const Vector& alpha, const Vector& beta, Index j, Index k,
                   double beta_last, int steps, bool converged) {
  const Ritz ritz = bidiagonal_svd(alpha, beta, j);
  PartialSvd out;
  out.sigma = ritz.theta.head(k);
  out.U = Ubasis.leftCols(j) * ritz.P.leftCols(k);
  out.V = Vbasis.leftCols(j) * ritz.Q.leftCols(k);
  out.steps = steps;
  out.converged = converged;
  for (Index i = 0; i < k; ++i)
    out.max_residual =
        std::max(out.max_residual, std::abs(beta_last * ritz.P(j - 1, i)));
  return out;
}

// Assumes op.rows() >= op.cols(), so the right basis fills first.
PartialSvd lanczos_tall(const ImplicitOperator& op, Index k,
                        const LanczosOptions& options) {
  const Index m = op.rows(), n = op.cols();
  const Index requested = options.max_steps > 0 ? options.max_steps : n;
  const Index cap = std::min<Index>(n, std::max<Index>(k, requested));

  Rng rng(options.seed);
  Matrix Ubasis(m, cap), Vbasis(n, cap + 1);
  Vector alpha = Vector::Zero(cap), beta = Vector::Zero(cap);

  Vector v = gaussian_vector(n, rng);
  v.normalize();
  Vbasis.col(0) = v;

  double scale = 0.0;  // running estimate of ||op||
  auto tiny = [&](double x) { return x <= 1e-13 * std::max(scale, 1e-300); };

  Vector p = op.apply(v);
  alpha[0] = p.norm();
  scale = alpha[0];
  if (tiny(alpha[0])) {
    alpha[0] = 0.0;
    Ubasis.col(0) = fresh_direction(Ubasis, 0, rng);
  } else {
    Ubasis.col(0) = p / alpha[0];
  }

  Index next_check = k;
  Index last_j = 0;
  double last_beta = 0.0;

  for (Index j = 1; j <= cap; ++j) {
    // Extend the right basis: r = N^T u_j - alpha_j v_j.
    Vector r = op.apply_adjoint(Ubasis.col(j - 1)) - alpha[j - 1] * Vbasis.col(j - 1);
    reorthogonalize(Vbasis, j, r);
    const bool right_full = (j == n);
    double b = right_full ? 0.0 : r.norm();
    scale = std::max(scale, b);
    if (right_full || tiny(b)) b = 0.0;
    beta[j - 1] = b;

    const bool final_step = (j == cap);
    if (j >= k && (j >= next_check || final_step || right_full)) {
      const RitzTail tail = ritz_tail(alpha, beta, j, k);
      last_j = j;
      last_beta = b;
      // After a breakdown the Ritz values are exact for an invariant subspace
      // but can miss copies of repeated singular values. Probe the complement
      // once: if the operator vanishes there, nothing is missing.
      bool done = b > 0.0 || right_full;
      if (!done) {
        Vector w = op.apply(fresh_direction(Vbasis, j, rng));
        reorthogonalize(Ubasis, j, w);
        done = tiny(w.norm());
      }
      for (Index i = 0; i < k && done; ++i)
        done = std::abs(b * tail.last_row[i]) <= options.tol * tail.sigma1;
      if (done || right_full)
        return extract(Ubasis, Vbasis, alpha, beta, j, k, b,
                       static_cast<int>(j), true);
      next_check = j + std::max<Index>(1, j / 8);
    }
    if (final_step) break;

    if (b == 0.0) {
      Vbasis.col(j) = fresh_direction(Vbasis, j, rng);
    } else {
      Vbasis.col(j) = r / b;
    }

    // Extend the left basis: p = N v_{j+1} - beta_j u_j.
    p = op.apply(Vbasis.col(j)) - b * Ubasis.col(j - 1);
    reorthogonalize(Ubasis, j, p);
    double a = p.norm();
    scale = std::max(scale, a);
    if (tiny(a)) {
      alpha[j] = 0.0;
      Ubasis.col(j) = fresh_direction(Ubasis, j, rng);
    } else {
      alpha[j] = a;
      Ubasis.col(j) = p / a;
    }
  }

  PartialSvd best = extract(Ubasis, Vbasis, alpha, beta, last_j, k, last_beta,
                            static_cast<int>(last_j), false);
  throw ConvergenceError("lanczos_partial_svd: no convergence in " +
                             std::to_string(last_j) + " steps",
                         std::move(best));
}

}  // namespace

PartialSvd lanczos_partial_svd(const ImplicitOperator& op, Index k,
                               const LanczosOptions& options) {
  if (k < 1 || k > std::min(op.rows(), op.cols()))
    throw InputError("lanczos_partial_svd: k must lie in [1, min(rows, cols)]");
  if (!(options.tol > 0.0))
    throw InputError("lanczos_partial_svd: tol must be > 0");

  if (op.rows() >= op.cols()) return lanczos_tall(op, k, options);

  try {
    PartialSvd t = lanczos_tall(op.adjoint(), k, options);
    std::swap(t.U, t.V);
    return t;
  } catch (ConvergenceError& e) {
    PartialSvd best = e.best();
    std::swap(best.U, best.V);
    throw ConvergenceError(e.what(), std::move(best));
  }
}

}  // namespace ladmap
