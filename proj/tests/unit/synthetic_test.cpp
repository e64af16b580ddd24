#include <gtest/gtest.h>

#include <Eigen/LU>
#include <Eigen/QR>

#include <algorithm>

#include "ladmap/pipeline/synthetic.hpp"

using namespace ladmap;

namespace {

Index numeric_rank(const Matrix& X) {
  Eigen::ColPivHouseholderQR<Matrix> qr(X);
  qr.setThreshold(1e-9);
  return qr.rank();
}

}  // namespace

TEST(Synthetic, ShapeAndLabels) {
  SyntheticSpec spec;
  spec.s = 4;
  spec.p = 7;
  spec.d = 30;
  spec.r_tilde = 3;
  const Dataset ds = gen_synthetic(spec);
  EXPECT_EQ(ds.X.rows(), 30);
  EXPECT_EQ(ds.X.cols(), 28);
  ASSERT_EQ(ds.labels.size(), 28u);
  for (int i = 0; i < 4; ++i)
    EXPECT_EQ(std::count(ds.labels.begin(), ds.labels.end(), i), 7);
  EXPECT_EQ(spec.label(), "(4, 7, 30, 3)");
}

TEST(Synthetic, DeterministicPerSeed) {
  SyntheticSpec spec;
  spec.s = 3;
  spec.p = 5;
  spec.d = 20;
  spec.r_tilde = 2;
  const Dataset a = gen_synthetic(spec), b = gen_synthetic(spec);
  EXPECT_EQ(a.X, b.X);
  EXPECT_EQ(a.labels, b.labels);
  spec.seed = 2;
  EXPECT_NE(gen_synthetic(spec).X, a.X);
}

TEST(Synthetic, CleanDataHasUnionRank) {
  SyntheticSpec spec;
  spec.corrupt_frac = 0.0;
  spec.s = 4;
  spec.p = 10;
  spec.d = 50;
  spec.r_tilde = 3;
  EXPECT_EQ(numeric_rank(gen_synthetic(spec).X), 12);
  spec.d = 10;
  EXPECT_EQ(numeric_rank(gen_synthetic(spec).X), 10);
}

TEST(Synthetic, EachBlockSpansItsSubspace) {
  SyntheticSpec spec;
  spec.corrupt_frac = 0.0;
  spec.s = 3;
  spec.p = 8;
  spec.d = 40;
  spec.r_tilde = 2;
  const Dataset ds = gen_synthetic(spec);
  for (Index i = 0; i < spec.s; ++i)
    EXPECT_EQ(numeric_rank(ds.X.middleCols(i * spec.p, spec.p)), 2);
}

TEST(Synthetic, CorruptsTheRequestedNumberOfColumns) {
  SyntheticSpec spec;
  spec.s = 4;
  spec.p = 10;
  spec.d = 40;
  spec.r_tilde = 2;
  spec.corrupt_frac = 0.25;
  const Dataset noisy = gen_synthetic(spec);
  spec.corrupt_frac = 0.0;
  const Dataset clean = gen_synthetic(spec);
  int changed = 0;
  for (Index j = 0; j < noisy.X.cols(); ++j)
    if ((noisy.X.col(j) - clean.X.col(j)).norm() > 0.0) ++changed;
  EXPECT_EQ(changed, 10);
}

TEST(Synthetic, Orthonormality) {
  Rng rng(3);
  const Matrix U = random_orthonormal(20, 5, rng);
  EXPECT_LT((U.transpose() * U - Matrix::Identity(5, 5)).norm(), 1e-12);
  const Matrix T = random_rotation(6, rng);
  EXPECT_LT((T.transpose() * T - Matrix::Identity(6, 6)).norm(), 1e-12);
  EXPECT_NEAR(T.determinant(), 1.0, 1e-12);
}

TEST(Synthetic, RejectsBadSpecs) {
  SyntheticSpec spec;
  spec.r_tilde = spec.d + 1;
  EXPECT_THROW(gen_synthetic(spec), InputError);
  spec = {};
  spec.s = 0;
  EXPECT_THROW(gen_synthetic(spec), InputError);
  spec = {};
  spec.corrupt_frac = 1.5;
  EXPECT_THROW(gen_synthetic(spec), InputError);
}
