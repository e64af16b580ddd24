#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ladmap/linalg.hpp"
#include "ladmap/random.hpp"

namespace ladmap {

/// s subspaces of rank r_tilde in R^d, p samples each.
struct SyntheticSpec {
  Index s = 10;
  Index p = 20;
  Index d = 200;
  Index r_tilde = 5;
  double corrupt_frac = 0.2;
  double noise_scale = 0.1;
  std::uint64_t seed = 1;

  void validate() const;
  /// "(s, p, d, r)"
  std::string label() const;
};

struct Dataset {
  Matrix X;                 // d x (s p)
  std::vector<int> labels;  // subspace index of each column
};

/// Haar-random d x r matrix with orthonormal columns.
Matrix random_orthonormal(Index d, Index r, Rng& rng);

/// Haar-random rotation (orthogonal, determinant +1).
Matrix random_rotation(Index d, Rng& rng);

/// Bases U_{i+1} = T U_i from a random rotation T, samples X_i = U_i Q_i
/// with Gaussian Q_i, then floor(corrupt_frac * s * p) whole columns get
/// Gaussian noise of standard deviation noise_scale * ||x||.
Dataset gen_synthetic(const SyntheticSpec& spec);

}  // namespace ladmap
