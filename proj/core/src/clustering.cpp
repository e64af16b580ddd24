#include "ladmap/pipeline/clustering.hpp"

#include <Eigen/Eigenvalues>

#include <limits>
#include <random>

#include "ladmap/random.hpp"

namespace ladmap {

Matrix affinity(const SkinnySvd& Z) {
  const Matrix A = Z.dense().cwiseAbs();
  return (A + A.transpose()) / 2.0;
}

Matrix spectral_embedding(const Matrix& W, Index s) {
  const Index n = W.rows();
  if (W.cols() != n) throw InputError("spectral_embedding: W must be square");
  if (s < 1 || s > n) throw InputError("spectral_embedding: s must lie in [1, n]");
  require_finite(W, "affinity");

  Vector dinv = W.rowwise().sum();
  for (Index i = 0; i < n; ++i) dinv[i] = dinv[i] > 0.0 ? 1.0 / std::sqrt(dinv[i]) : 0.0;
  Matrix L = -(dinv.asDiagonal() * W * dinv.asDiagonal());
  L.diagonal().array() += 1.0;

  Eigen::SelfAdjointEigenSolver<Matrix> es(L);
  if (es.info() != Eigen::Success) throw SolverError("spectral_embedding: eigensolver failed");
  Matrix Y = es.eigenvectors().leftCols(s);
  for (Index i = 0; i < n; ++i) {
    const double r = Y.row(i).norm();
    if (r > 0.0) Y.row(i) /= r;
  }
  return Y;
}

namespace {

struct Clustering {
  std::vector<int> labels;
  double inertia = std::numeric_limits<double>::infinity();
};

Matrix plus_plus_seeds(const Matrix& P, Index k, Rng& rng) {
  const Index n = P.rows();
  Matrix C(k, P.cols());
  std::uniform_int_distribution<Index> first(0, n - 1);
  C.row(0) = P.row(first(rng));
  Vector d2 = (P.rowwise() - C.row(0)).rowwise().squaredNorm();
  for (Index c = 1; c < k; ++c) {
    const double total = d2.sum();
    Index pick = 0;
    if (total > 0.0) {
      std::uniform_real_distribution<double> u(0.0, total);
      double x = u(rng);
      while (pick < n - 1 && x >= d2[pick]) x -= d2[pick++];
    } else {
      pick = first(rng);
    }
    C.row(c) = P.row(pick);
    d2 = d2.cwiseMin((P.rowwise() - C.row(c)).rowwise().squaredNorm());
  }
  return C;
}

Clustering lloyd(const Matrix& P, Matrix C, int max_iter) {
  const Index n = P.rows(), k = C.rows();
  Clustering out;
  out.labels.assign(static_cast<std::size_t>(n), -1);
  for (int it = 0; it < max_iter; ++it) {
    bool changed = false;
    out.inertia = 0.0;
    for (Index i = 0; i < n; ++i) {
      Index best = 0;
      const double d = (C.rowwise() - P.row(i)).rowwise().squaredNorm().minCoeff(&best);
      out.inertia += d;
      if (out.labels[i] != static_cast<int>(best)) {
        out.labels[i] = static_cast<int>(best);
        changed = true;
      }
    }
    if (!changed) break;
    Matrix sum = Matrix::Zero(k, P.cols());
    std::vector<Index> count(static_cast<std::size_t>(k), 0);
    for (Index i = 0; i < n; ++i) {
      sum.row(out.labels[i]) += P.row(i);
      ++count[out.labels[i]];
    }
    for (Index c = 0; c < k; ++c)
      if (count[c] > 0) C.row(c) = sum.row(c) / static_cast<double>(count[c]);
  }
  return out;
}

}  // namespace

std::vector<int> kmeans(const Matrix& points, Index k, const KMeansOptions& options) {
  if (k < 1 || k > points.rows()) throw InputError("kmeans: k must lie in [1, points]");
  if (options.restarts < 1 || options.max_iter < 1)
    throw InputError("kmeans: restarts and max_iter must be >= 1");
  Clustering best;
  for (int r = 0; r < options.restarts; ++r) {
    Rng rng(derive_seed(options.seed, static_cast<std::uint64_t>(r)));
    Clustering c = lloyd(points, plus_plus_seeds(points, k, rng), options.max_iter);
    if (c.inertia < best.inertia) best = std::move(c);
  }
  return best.labels;
}

std::vector<int> cluster_from_Z(const SkinnySvd& Z, Index s, std::uint64_t seed) {
  if (Z.rows() != Z.cols()) throw InputError("cluster_from_Z: Z must be square");
  if (s < 2) throw InputError("cluster_from_Z: need at least 2 clusters");
  if (s > Z.rows()) throw InputError("cluster_from_Z: more clusters than points");
  KMeansOptions opts;
  opts.seed = seed;
  return kmeans(spectral_embedding(affinity(Z), s), s, opts);
}

}  // namespace ladmap
