#include "ladmap/pipeline/metrics.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace ladmap {

RelativeErrors relative_errors(const Matrix& E_hat, const SkinnySvd& Z_hat,
                               const Matrix& E0, const SkinnySvd& Z0) {
  if (E_hat.rows() != E0.rows() || E_hat.cols() != E0.cols() ||
      Z_hat.rows() != Z0.rows() || Z_hat.cols() != Z0.cols())
    throw InputError("relative_errors: shape mismatch");
  const double z0 = Z0.frobenius_norm();
  const double e0 = E0.norm();
  if (!(z0 > 0.0)) throw MetricError("relative_errors: ||Z0|| = 0");
  if (!(e0 > 0.0)) throw MetricError("relative_errors: ||E0|| = 0");
  return {frobenius_distance(Z_hat, Z0) / z0, (E_hat - E0).norm() / e0};
}

std::vector<int> max_weight_assignment(const Matrix& weights) {
  const Index n = weights.rows();
  if (weights.cols() != n) throw InputError("assignment: matrix must be square");
  if (n == 0) return {};
  const double top = weights.maxCoeff();
  // Minimum-cost form with potentials; 1-based indices, column 0 is a sentinel.
  auto cost = [&](Index i, Index j) { return top - weights(i - 1, j - 1); };
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<Index> match(n + 1, 0), way(n + 1, 0);
  for (Index i = 1; i <= n; ++i) {
    match[0] = i;
    Index j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const Index i0 = match[j0];
      double delta = inf;
      Index j1 = 0;
      for (Index j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0, j) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (Index j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const Index j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> assignment(n, -1);
  for (Index j = 1; j <= n; ++j)
    assignment[match[j] - 1] = static_cast<int>(j - 1);
  return assignment;
}

double accuracy(const std::vector<int>& predicted,
                const std::vector<int>& truth) {
  if (predicted.size() != truth.size())
    throw InputError("accuracy: label vectors differ in length");
  if (truth.empty()) return 1.0;

  std::map<int, Index> pred_ids, true_ids;
  for (int l : predicted) pred_ids.emplace(l, 0);
  for (int l : truth) true_ids.emplace(l, 0);
  Index next = 0;
  for (auto& [l, id] : pred_ids) id = next++;
  next = 0;
  for (auto& [l, id] : true_ids) id = next++;

  const Index k = std::max<Index>(pred_ids.size(), true_ids.size());
  Matrix confusion = Matrix::Zero(k, k);
  for (std::size_t i = 0; i < truth.size(); ++i)
    confusion(pred_ids[predicted[i]], true_ids[truth[i]]) += 1.0;

  const std::vector<int> match = max_weight_assignment(confusion);
  double agree = 0.0;
  for (Index i = 0; i < k; ++i) agree += confusion(i, match[i]);
  return agree / static_cast<double>(truth.size());
}

}  // namespace ladmap
