#pragma once

#include <variant>

#include "ladmap/linalg.hpp"

namespace ladmap {

/// Nonnegative finite shrinkage threshold.
class ShrinkThreshold {
 public:
  explicit ShrinkThreshold(double value);
  double value() const { return value_; }

 private:
  double value_;
};

/// argmin_W eps ||W||_{2,1} + 1/2 ||W - M||_F^2, column by column.
Matrix l21_shrink(const Matrix& M, ShrinkThreshold eps);

/// ||W||_{2,1}: sum of column norms.
double l21_norm(const Matrix& W);

struct SvtResult {
  SkinnySvd Z;
  /// Number of computed singular values strictly above the threshold.
  Index kept = 0;
  /// Every computed singular value exceeded the threshold, so the true
  /// shrunk rank may be larger than rank_hint.
  bool rank_hint_too_small = false;
  int lanczos_steps = 0;
};

/// Singular value thresholding restricted to the top `rank_hint` triplets.
/// Values exactly equal to the threshold are discarded.
SvtResult svt(const ImplicitOperator& op, ShrinkThreshold tau, Index rank_hint,
              const LanczosOptions& options = {});
SvtResult svt(const Matrix& M, ShrinkThreshold tau, Index rank_hint,
              const LanczosOptions& options = {});

/// Soft-thresholds an already computed partial SVD.
SvtResult shrink_spectrum(const PartialSvd& svd, double tau);

}  // namespace ladmap
