#include "ladmap/prox.hpp"

#include <cmath>

namespace ladmap {

ShrinkThreshold::ShrinkThreshold(double value) : value_(value) {
  if (!(value >= 0.0) || !std::isfinite(value))
    throw InputError("ShrinkThreshold must be finite and nonnegative");
}

Matrix l21_shrink(const Matrix& M, ShrinkThreshold eps) {
  require_finite(M, "l21_shrink");
  const double t = eps.value();
  Matrix W(M.rows(), M.cols());
  for (Index j = 0; j < M.cols(); ++j) {
    const double norm = std::sqrt(M.col(j).squaredNorm());
    if (norm <= t) {
      W.col(j).setZero();
    } else {
      W.col(j) = (1.0 - t / norm) * M.col(j);
    }
  }
  return W;
}

double l21_norm(const Matrix& W) { return W.colwise().norm().sum(); }

SvtResult shrink_spectrum(const PartialSvd& svd, double tau) {
  SvtResult out;
  const Index computed = svd.sigma.size();
  Index kept = 0;
  while (kept < computed && svd.sigma[kept] > tau) ++kept;
  out.kept = kept;
  out.rank_hint_too_small = (kept == computed);
  out.lanczos_steps = svd.steps;
  out.Z.U = svd.U.leftCols(kept);
  out.Z.V = svd.V.leftCols(kept);
  out.Z.sigma = svd.sigma.head(kept).array() - tau;
  return out;
}

SvtResult svt(const ImplicitOperator& op, ShrinkThreshold tau, Index rank_hint,
              const LanczosOptions& options) {
  if (rank_hint < 1 || rank_hint > std::min(op.rows(), op.cols()))
    throw InputError("svt: rank_hint must lie in [1, min(rows, cols)]");
  SvtResult out = shrink_spectrum(lanczos_partial_svd(op, rank_hint, options),
                                  tau.value());
  // A full spectrum cannot be under-computed.
  if (rank_hint == std::min(op.rows(), op.cols())) out.rank_hint_too_small = false;
  return out;
}

SvtResult svt(const Matrix& M, ShrinkThreshold tau, Index rank_hint,
              const LanczosOptions& options) {
  require_finite(M, "svt");
  return svt(ImplicitOperator::wrap(M), tau, rank_hint, options);
}

}  // namespace ladmap
