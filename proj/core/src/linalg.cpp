#include "ladmap/linalg.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <string>

#include "ladmap/random.hpp"

namespace ladmap {

void require_finite(const Eigen::Ref<const Matrix>& m, const char* what) {
  if (!m.allFinite())
    throw InputError(std::string(what) + ": non-finite entries");
}

SkinnySvd SkinnySvd::zero(Index rows, Index cols) {
  return {Matrix(rows, 0), Vector(0), Matrix(cols, 0)};
}

Matrix SkinnySvd::dense() const {
  if (rank() == 0) return Matrix::Zero(rows(), cols());
  return U * sigma.asDiagonal() * V.transpose();
}

bool SkinnySvd::is_valid(double tol) const {
  const Index r = rank();
  if (U.cols() != r || V.cols() != r) return false;
  if (r == 0) return true;
  const Matrix I = Matrix::Identity(r, r);
  if (((U.transpose() * U) - I).cwiseAbs().maxCoeff() > tol) return false;
  if (((V.transpose() * V) - I).cwiseAbs().maxCoeff() > tol) return false;
  for (Index i = 0; i < r; ++i) {
    if (!(sigma[i] > 0.0)) return false;
    if (i + 1 < r && sigma[i] < sigma[i + 1]) return false;
  }
  return true;
}

double frobenius_inner(const SkinnySvd& a, const SkinnySvd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InputError("frobenius_inner: shape mismatch");
  if (a.rank() == 0 || b.rank() == 0) return 0.0;
  // tr(S_a U_a^T U_b S_b V_b^T V_a)
  const Matrix left = a.sigma.asDiagonal() * (a.U.transpose() * b.U) *
                      b.sigma.asDiagonal();
  const Matrix right = b.V.transpose() * a.V;
  return left.cwiseProduct(right.transpose()).sum();
}

namespace {

double stacked_distance(const SkinnySvd& a, const SkinnySvd& b) {
  const Index ra = a.rank(), rb = b.rank();
  Matrix left(a.rows(), ra + rb), right(a.cols(), ra + rb);
  left << a.U, b.U;
  right << a.V, b.V;
  Vector weights(ra + rb);
  weights << a.sigma, -b.sigma;
  Eigen::HouseholderQR<Matrix> ql(left), qr(right);
  const Index kl = std::min(left.rows(), left.cols());
  const Index kr = std::min(right.rows(), right.cols());
  const Matrix rl = ql.matrixQR().topRows(kl).triangularView<Eigen::Upper>();
  const Matrix rr = qr.matrixQR().topRows(kr).triangularView<Eigen::Upper>();
  return (rl * weights.asDiagonal() * rr.transpose()).norm();
}

}  // namespace

double frobenius_distance(const SkinnySvd& a, const SkinnySvd& b) {
  const double na = a.sigma.squaredNorm();
  const double nb = b.sigma.squaredNorm();
  const double sq = na + nb - 2.0 * frobenius_inner(a, b);
  if (a.rank() + b.rank() == 0) return 0.0;
  // Below this ratio the subtraction has lost more than ~half the digits.
  if (sq > 1e-8 * (na + nb)) return std::sqrt(sq);
  return stacked_distance(a, b);
}

ImplicitOperator::ImplicitOperator(Index rows, Index cols, Apply apply,
                                   Apply apply_adjoint)
    : rows_(rows),
      cols_(cols),
      apply_(std::move(apply)),
      adjoint_(std::move(apply_adjoint)) {
  if (rows < 1 || cols < 1)
    throw InputError("ImplicitOperator: empty shape");
}

ImplicitOperator ImplicitOperator::wrap(const Matrix& m) {
  const Matrix* p = &m;
  return ImplicitOperator(
      m.rows(), m.cols(), [p](const Vector& v) -> Vector { return *p * v; },
      [p](const Vector& u) -> Vector { return p->transpose() * u; });
}

Vector ImplicitOperator::apply(const Vector& v) const {
  if (v.size() != cols_) throw InputError("ImplicitOperator::apply: size");
  return apply_(v);
}

Vector ImplicitOperator::apply_adjoint(const Vector& u) const {
  if (u.size() != rows_)
    throw InputError("ImplicitOperator::apply_adjoint: size");
  return adjoint_(u);
}

ImplicitOperator ImplicitOperator::adjoint() const {
  return ImplicitOperator(cols_, rows_, adjoint_, apply_);
}

double adjoint_mismatch(const ImplicitOperator& op, int probes,
                        std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < probes; ++i) {
    const Vector v = gaussian_vector(op.cols(), rng);
    const Vector u = gaussian_vector(op.rows(), rng);
    const Vector nv = op.apply(v);
    const Vector ntu = op.apply_adjoint(u);
    const double scale = nv.norm() * u.norm() + v.norm() * ntu.norm();
    if (scale == 0.0) continue;
    worst = std::max(worst, std::abs(nv.dot(u) - v.dot(ntu)) / scale);
  }
  return worst;
}

double spectral_norm_sq(const Matrix& X, double tol, int max_iter,
                        std::uint64_t seed) {
  if (X.size() == 0) throw InputError("spectral_norm_sq: empty matrix");
  if (!(tol > 0.0)) throw InputError("spectral_norm_sq: tol must be > 0");
  require_finite(X, "spectral_norm_sq");

  Rng rng(seed);
  Vector v = gaussian_vector(X.cols(), rng);
  v.normalize();
  double lambda = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    const Vector w = X.transpose() * (X * v);
    lambda = v.dot(w);
    if (lambda <= 0.0) return 0.0;  // X v == 0 for a random v: X == 0
    const double residual = (w - lambda * v).norm();
    v = w / w.norm();
    if (residual <= tol * lambda) break;
  }
  // One more Rayleigh quotient at the final iterate.
  return std::max(lambda, (X * v).squaredNorm());
}

Matrix skinny_matmul_left(const Matrix& X, const SkinnySvd& Z) {
  if (X.cols() != Z.rows())
    throw InputError("skinny_matmul_left: X.cols != Z.rows");
  if (Z.rank() == 0) return Matrix::Zero(X.rows(), Z.cols());
  Matrix xu = X * Z.U;
  xu *= Z.sigma.asDiagonal();
  return xu * Z.V.transpose();
}

}  // namespace ladmap
