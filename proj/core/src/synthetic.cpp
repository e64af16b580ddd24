#include "ladmap/pipeline/synthetic.hpp"

#include <Eigen/LU>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace ladmap {

void SyntheticSpec::validate() const {
  if (s < 1 || p < 1 || d < 1 || r_tilde < 1)
    throw InputError("synthetic spec: s, p, d, r must be >= 1");
  if (r_tilde > d) throw InputError("synthetic spec: r_tilde exceeds d");
  if (!(corrupt_frac >= 0.0 && corrupt_frac <= 1.0))
    throw InputError("synthetic spec: corrupt_frac must lie in [0, 1]");
  if (!(noise_scale >= 0.0) || !std::isfinite(noise_scale))
    throw InputError("synthetic spec: noise_scale must be >= 0");
}

std::string SyntheticSpec::label() const {
  std::ostringstream os;
  os << '(' << s << ", " << p << ", " << d << ", " << r_tilde << ')';
  return os.str();
}

namespace {

// Q factor with the signs of diag(R) made positive, which makes the result
// Haar distributed for a Gaussian input.
Matrix haar_q(const Matrix& g) {
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix Q = qr.householderQ() * Matrix::Identity(g.rows(), g.cols());
  const auto& R = qr.matrixQR();
  for (Index j = 0; j < g.cols(); ++j)
    if (R(j, j) < 0.0) Q.col(j) = -Q.col(j);
  return Q;
}

}  // namespace

Matrix random_orthonormal(Index d, Index r, Rng& rng) {
  return haar_q(gaussian_matrix(d, r, rng));
}

Matrix random_rotation(Index d, Rng& rng) {
  Matrix T = haar_q(gaussian_matrix(d, d, rng));
  if (T.determinant() < 0.0) T.col(0) = -T.col(0);
  return T;
}

Dataset gen_synthetic(const SyntheticSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  const Index n = spec.s * spec.p;

  Matrix basis = random_orthonormal(spec.d, spec.r_tilde, rng);
  const Matrix T = random_rotation(spec.d, rng);

  Dataset data;
  data.X.resize(spec.d, n);
  data.labels.resize(static_cast<std::size_t>(n));
  for (Index i = 0; i < spec.s; ++i) {
    if (i > 0) basis = T * basis;
    const Matrix Q = gaussian_matrix(spec.r_tilde, spec.p, rng);
    data.X.middleCols(i * spec.p, spec.p) = basis * Q;
    std::fill_n(data.labels.begin() + i * spec.p, spec.p, static_cast<int>(i));
  }

  const auto corrupted = static_cast<Index>(
      std::floor(spec.corrupt_frac * static_cast<double>(n)));
  if (corrupted > 0) {
    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    std::shuffle(order.begin(), order.end(), rng);
    for (Index c = 0; c < corrupted; ++c) {
      const Index j = order[static_cast<std::size_t>(c)];
      const double sd = spec.noise_scale * data.X.col(j).norm();
      data.X.col(j) += sd * gaussian_vector(spec.d, rng);
    }
  }
  return data;
}

}  // namespace ladmap
