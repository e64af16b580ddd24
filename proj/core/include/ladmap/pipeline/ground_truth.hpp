#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

#include "ladmap/lrr.hpp"

namespace ladmap {

/// Bumped whenever the reference procedure changes, invalidating caches.
inline constexpr int kGroundTruthVersion = 1;

struct GroundTruthOptions {
  int iterations = 2000;
  double beta_max = 1e3;
  /// No caching when empty.
  std::optional<std::filesystem::path> cache_dir;
};

struct GroundTruth {
  Matrix E0;
  SkinnySvd Z0;
  Matrix Lambda0;
  double feasibility = 0.0;
  bool from_cache = false;
};

/// FNV-1a over the bytes of X, mu, the iteration count, beta_max and the
/// procedure version.
std::uint64_t ground_truth_key(const Matrix& X, double mu,
                               const GroundTruthOptions& options = {});

/// Standard LADMAP run for a fixed number of iterations with a capped
/// penalty. The accelerated evaluation is used; it yields the same iterates.
GroundTruth ground_truth(const Matrix& X, double mu,
                         const GroundTruthOptions& options = {});

}  // namespace ladmap
