#pragma once

#include <vector>

#include "ladmap/linalg.hpp"

namespace ladmap {

struct RelativeErrors {
  double z = 0.0;  // ||Z_hat - Z0|| / ||Z0||
  double e = 0.0;  // ||E_hat - E0|| / ||E0||
};

/// Frobenius ratios against a reference solution. Z is compared through its
/// factors. Throws MetricError on a zero reference.
RelativeErrors relative_errors(const Matrix& E_hat, const SkinnySvd& Z_hat,
                               const Matrix& E0, const SkinnySvd& Z0);

/// Fraction of points labelled correctly under the best one-to-one matching
/// of predicted to true labels.
double accuracy(const std::vector<int>& predicted, const std::vector<int>& truth);

/// Maximum-weight perfect matching on a square weight matrix (Hungarian
/// method). Returns assignment[row] = column.
std::vector<int> max_weight_assignment(const Matrix& weights);

}  // namespace ladmap
