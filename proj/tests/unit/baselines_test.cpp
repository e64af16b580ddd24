#include <gtest/gtest.h>

#include "ladmap/baselines.hpp"
#include "ladmap/pipeline/ground_truth.hpp"
#include "ladmap/pipeline/synthetic.hpp"
#include "ladmap/prox.hpp"
#include "support/oracles.hpp"

using namespace ladmap;

namespace {

Matrix small_data(std::uint64_t seed) {
  SyntheticSpec spec;
  spec.s = 5;
  spec.p = 10;
  spec.d = 60;
  spec.r_tilde = 3;
  spec.seed = seed;
  return gen_synthetic(spec).X;
}

}  // namespace

TEST(Adm, FactorizesOnceAndMatchesReferenceObjective) {
  const Matrix X = small_data(1);
  const LrrProblem p = LrrProblem::make(X, 0.1);
  const LrrResult r = solve_adm_lrr(p);
  ASSERT_EQ(r.status, Status::Converged);
  EXPECT_EQ(r.factorizations, 1);
  const GroundTruth gt = ground_truth(X, 0.1);
  const double f0 = p.objective(gt.E0, gt.Z0);
  EXPECT_LT(std::abs(p.objective(r.E, r.Z) - f0), 5e-3 * f0);
  EXPECT_LE(r.trace.records.back().feasibility, 1e-4);
  EXPECT_LE(r.trace.records.back().kkt2, 1e-5);
  EXPECT_TRUE(r.Z.is_valid());
}

TEST(Adm, PenaltyGrowsGeometrically) {
  const LrrProblem p = LrrProblem::make(small_data(2), 0.1);
  AdmConfig c;
  c.max_iter = 20;
  const LrrResult r = solve_adm_lrr(p, c);
  EXPECT_EQ(r.status, Status::IterationCapped);
  for (std::size_t i = 1; i < r.trace.size(); ++i)
    EXPECT_NEAR(r.trace.records[i].beta, c.rho * r.trace.records[i - 1].beta,
                1e-12 * r.trace.records[i].beta);
}

TEST(Adm, RejectsBadConfig) {
  const LrrProblem p = LrrProblem::make(small_data(3), 0.1);
  AdmConfig c;
  c.rho = 0.5;
  EXPECT_THROW(solve_adm_lrr(p, c), ConfigError);
  c = {};
  c.beta_max = 1e-9;
  EXPECT_THROW(solve_adm_lrr(p, c), ConfigError);
  c = {};
  c.eps1 = 0.0;
  EXPECT_THROW(solve_adm_lrr(p, c), ConfigError);
}

TEST(Ladm, KeepsPenaltyConstant) {
  const LrrProblem p = LrrProblem::make(small_data(4), 0.1);
  const LrrResult r = solve_ladm_lrr(p);
  ASSERT_EQ(r.status, Status::Converged);
  const double beta = 2.5 / std::min(p.m(), p.n());
  for (const auto& rec : r.trace.records) EXPECT_DOUBLE_EQ(rec.beta, beta);
  LrrConfig c;
  c.beta0 = 0.3;
  c.max_iter = 5;
  for (const auto& rec : solve_ladm_lrr(p, c).trace.records) EXPECT_DOUBLE_EQ(rec.beta, 0.3);
}

TEST(Apg, ContinuationIsMonotoneAndBounded) {
  const LrrProblem p = LrrProblem::make(small_data(5), 0.1);
  ApgConfig c;
  c.beta_min = 1e-4;
  c.max_iter = 150;
  const LrrResult r = solve_apg_lrr(p, c);
  for (std::size_t i = 1; i < r.trace.size(); ++i) {
    EXPECT_LE(r.trace.records[i].beta, r.trace.records[i - 1].beta);
    EXPECT_GE(r.trace.records[i].beta, c.beta_min);
  }
  EXPECT_DOUBLE_EQ(r.trace.records.back().beta, c.beta_min);
}

// At termination Z and E should be a fixed point of the proximal gradient map
// for the final penalty.
TEST(Apg, TerminatesNearAProximalFixedPoint) {
  const Matrix X = small_data(6);
  const LrrProblem p = LrrProblem::make(X, 0.1);
  const LrrResult r = solve_apg_lrr(p);
  ASSERT_EQ(r.status, Status::Converged);
  const double tau = oracle::dense_svd(X).sigma[0];
  const double t = tau * tau;
  const double beta = r.trace.records.back().beta;
  const Matrix Z = r.Z.dense();
  const Matrix R = X - X * Z - r.E;
  const Matrix Zf = oracle::dense_svt(Z + X.transpose() * R / t, beta / t);
  const Matrix Ef = l21_shrink(r.E + R / t, ShrinkThreshold(beta * p.mu / t));
  EXPECT_LT((Zf - Z).norm(), 1e-3 * X.norm());
  EXPECT_LT((Ef - r.E).norm(), 1e-3 * X.norm());
}

TEST(Apg, RejectsBadConfig) {
  const LrrProblem p = LrrProblem::make(small_data(7), 0.1);
  ApgConfig c;
  c.tau = 1e-6;
  EXPECT_THROW(solve_apg_lrr(p, c), ConfigError);
  c = {};
  c.theta = 1.0;
  EXPECT_THROW(solve_apg_lrr(p, c), ConfigError);
  c = {};
  c.beta_min = c.beta0;
  EXPECT_THROW(solve_apg_lrr(p, c), ConfigError);
}
