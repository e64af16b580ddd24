#pragma once

#include <cstdint>
#include <vector>

#include "ladmap/linalg.hpp"

namespace ladmap {

/// W = (|Z| + |Z^T|) / 2, densified.
Matrix affinity(const SkinnySvd& Z);

struct KMeansOptions {
  int restarts = 20;
  int max_iter = 300;
  std::uint64_t seed = 7;
};

/// k-means++ seeding and Lloyd iterations on the rows of `points`; the
/// restart with the smallest inertia wins.
std::vector<int> kmeans(const Matrix& points, Index k, const KMeansOptions& options = {});

/// Rows of the s eigenvectors of I - D^{-1/2} W D^{-1/2} with the smallest
/// eigenvalues, each normalized to unit length. Isolated points keep a zero row.
Matrix spectral_embedding(const Matrix& W, Index s);

/// Spectral clustering of the affinity built from Z into s groups.
std::vector<int> cluster_from_Z(const SkinnySvd& Z, Index s, std::uint64_t seed = 7);

}  // namespace ladmap
