#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "ladmap/engine.hpp"
#include "support/oracles.hpp"

using namespace ladmap;

namespace {

Matrix soft(const Matrix& p, double t) {
  return p.unaryExpr([t](double v) { return std::copysign(std::max(std::abs(v) - t, 0.0), v); });
}

ProxOracle l1_prox() {
  return [](const Matrix& p, double w) { return soft(p, 1.0 / w); };
}

// min |x| + |y|  s.t.  x + y = 1, solutions x, y >= 0 with lambda* = -1.
SeparableProblem abs_sum() {
  SeparableProblem p;
  p.A = LinearMap::identity(1, 1);
  p.B = LinearMap::identity(1, 1);
  p.c = Matrix::Constant(1, 1, 1.0);
  p.prox_f = l1_prox();
  p.prox_g = l1_prox();
  p.f = [](const Matrix& x) { return x.cwiseAbs().sum(); };
  p.g = p.f;
  return p;
}

// min ||x||_1 + 1/2 ||y||^2  s.t.  A x - y = b, i.e. the lasso.
struct Lasso {
  SeparableProblem problem;
  Matrix A;
  Vector b;
};

Lasso lasso(std::uint64_t seed) {
  Rng rng(seed);
  Lasso l;
  l.A = gaussian_matrix(15, 25, rng);
  l.b = 4.0 * gaussian_vector(15, rng);
  l.problem.A = LinearMap::left_multiply(l.A, 1);
  l.problem.B = LinearMap::scaled_identity(15, 1, -1.0);
  l.problem.c = l.b;
  l.problem.prox_f = l1_prox();
  l.problem.prox_g = [](const Matrix& p, double w) -> Matrix { return p * (w / (1.0 + w)); };
  l.problem.f = [](const Matrix& x) { return x.cwiseAbs().sum(); };
  l.problem.g = [](const Matrix& y) { return 0.5 * y.squaredNorm(); };
  return l;
}

double lyapunov(const SeparableProblem& p, const LadmapConfig& cfg, const LadmapState& s,
                const Matrix& xs, const Matrix& ys, const Matrix& ls) {
  const Matrix dx = s.x - xs;
  return *cfg.eta_A * dx.squaredNorm() - p.A.apply(dx).squaredNorm() +
         *cfg.eta_B * (s.y - ys).squaredNorm() + (s.lambda - ls).squaredNorm() / (s.beta * s.beta);
}

double peak(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

}  // namespace

TEST(ResolveConfig, FillsDefaults) {
  const Lasso l = lasso(1);
  const LadmapConfig r = resolve_config(l.problem, {});
  EXPECT_DOUBLE_EQ(*r.beta0, 1 * 1e-5);
  const double a = oracle::dense_svd(l.A).sigma[0];
  EXPECT_NEAR(*r.eta_A, 1.02 * a * a, 3e-6 * a * a);
  EXPECT_NEAR(*r.eta_B, 1.02, 1e-12);
}

TEST(ResolveConfig, RejectsViolatedHypotheses) {
  const SeparableProblem p = abs_sum();
  LadmapConfig c;
  c.eta_A = 1.0;  // must exceed ||A||^2 = 1
  EXPECT_THROW(resolve_config(p, c), ConfigError);
  c = {};
  c.beta0 = 1.0;
  c.beta_max = 0.5;
  EXPECT_THROW(resolve_config(p, c), ConfigError);
  c = {};
  c.rho0 = 0.9;
  EXPECT_THROW(resolve_config(p, c), ConfigError);
  c = {};
  c.eps2 = 0.0;
  EXPECT_THROW(resolve_config(p, c), ConfigError);
  c = {};
  c.beta0 = -1.0;
  EXPECT_THROW(resolve_config(p, c), ConfigError);
}

TEST(ResolveConfig, RejectsZeroRightHandSide) {
  SeparableProblem p = abs_sum();
  p.c.setZero();
  EXPECT_THROW(resolve_config(p, {}), ConfigError);
}

TEST(ResolveConfig, RejectsShapeMismatchAndMissingOracles) {
  SeparableProblem p = abs_sum();
  p.c = Matrix::Ones(2, 1);
  EXPECT_THROW(resolve_config(p, {}), InputError);
  p = abs_sum();
  p.prox_g = nullptr;
  EXPECT_THROW(resolve_config(p, {}), InputError);
}

TEST(Penalty, GrowsOnlyWhenKkt2StrictlyBelowEps2) {
  EXPECT_DOUBLE_EQ(next_penalty(1.0, 0.5e-5, 1e-5, 1.9, 1e10), 1.9);
  EXPECT_DOUBLE_EQ(next_penalty(1.0, 1e-5, 1e-5, 1.9, 1e10), 1.0);
  EXPECT_DOUBLE_EQ(next_penalty(1.0, 1.0, 1e-5, 1.9, 1e10), 1.0);
  EXPECT_DOUBLE_EQ(next_penalty(8.0, 0.0, 1e-5, 1.9, 10.0), 10.0);
}

TEST(Kkt2Residual, Formula) {
  EXPECT_DOUBLE_EQ(kkt2_residual(2.0, 3.0, 5.0, 4.0), 2.0 * 5.0 / 4.0);
  EXPECT_DOUBLE_EQ(kkt2_residual(2.0, 7.0, 5.0, 4.0), 2.0 * 7.0 / 4.0);
}

TEST(Engine, AbsSumReachesAFeasibleMinimizer) {
  const SeparableProblem p = abs_sum();
  const LadmapResult r = solve(p, {});
  ASSERT_EQ(r.status, Status::Converged);
  const double x = r.state.x(0, 0), y = r.state.y(0, 0);
  EXPECT_NEAR(x + y, 1.0, 1e-4);
  EXPECT_NEAR(std::abs(x) + std::abs(y), 1.0, 1e-4);
  EXPECT_NEAR(r.state.lambda(0, 0), -1.0, 1e-3);
}

TEST(Engine, LassoMatchesFista) {
  const Lasso l = lasso(2);
  LadmapConfig c;
  c.eps1 = 1e-9;
  c.eps2 = 1e-9;
  c.max_iter = 20000;
  const LadmapResult r = solve(l.problem, c);
  ASSERT_EQ(r.status, Status::Converged);
  const Vector ref = oracle::lasso_fista(l.A, l.b);
  EXPECT_LT((r.state.x.col(0) - ref).norm(), 1e-5 * (1.0 + ref.norm()));
}

TEST(Engine, StoppingResidualsHoldAtTermination) {
  const Lasso l = lasso(3);
  const LadmapConfig c;
  const LadmapResult r = solve(l.problem, c);
  ASSERT_EQ(r.status, Status::Converged);
  EXPECT_LT(r.trace.records.back().feasibility, c.eps1);
  EXPECT_LE(r.trace.records.back().kkt2, c.eps2);
  EXPECT_EQ(static_cast<int>(r.trace.size()), r.state.k);
}

TEST(Engine, BetaNonDecreasingAndBounded) {
  const Lasso l = lasso(4);
  LadmapConfig c;
  c.beta_max = 0.05;
  const LadmapResult r = solve(l.problem, c);
  for (std::size_t i = 1; i < r.trace.size(); ++i) {
    EXPECT_GE(r.trace.records[i].beta, r.trace.records[i - 1].beta);
    EXPECT_LE(r.trace.records[i].beta, c.beta_max);
  }
}

TEST(Engine, LyapunovQuantityIsNonIncreasing) {
  const Lasso l = lasso(5);
  const Vector xs = oracle::lasso_fista(l.A, l.b, 100000);
  const Matrix ys = l.A * xs - l.b;
  const LadmapConfig cfg = resolve_config(l.problem, {});
  std::vector<double> v;
  solve(l.problem, cfg, std::nullopt,
        [&](const LadmapState& s) { v.push_back(lyapunov(l.problem, cfg, s, xs, ys, ys)); });
  ASSERT_GT(v.size(), 3u);
  for (std::size_t k = 1; k < v.size(); ++k) EXPECT_LE(v[k], v[k - 1] + 1e-6 * v[0]) << k;
}

TEST(Engine, LyapunovHoldsForEveryKktPointOfAbsSum) {
  const SeparableProblem p = abs_sum();
  const LadmapConfig cfg = resolve_config(p, {});
  for (double xs : {0.0, 0.3, 0.5, 1.0}) {
    const Matrix X = Matrix::Constant(1, 1, xs), Y = Matrix::Constant(1, 1, 1.0 - xs);
    const Matrix L = Matrix::Constant(1, 1, -1.0);
    std::vector<double> v;
    solve(p, cfg, std::nullopt,
          [&](const LadmapState& s) { v.push_back(lyapunov(p, cfg, s, X, Y, L)); });
    for (std::size_t k = 1; k < v.size(); ++k) EXPECT_LE(v[k], v[k - 1] + 1e-6 * v[0]);
  }
}

TEST(Engine, DifferencesVanish) {
  // Zero start with a tiny beta0 makes the first steps tiny too, so the scale
  // is the largest step taken.
  const Lasso l = lasso(6);
  LadmapConfig c;
  c.eps1 = 1e-9;
  c.eps2 = 1e-9;
  c.max_iter = 20000;
  const LadmapResult r = solve(l.problem, c);
  ASSERT_EQ(r.status, Status::Converged);
  std::vector<double> dx, dy, dl;
  for (const auto& rec : r.trace.records) {
    dx.push_back(rec.dx_norm);
    dy.push_back(rec.dy_norm);
    dl.push_back(rec.dlambda_norm);
  }
  EXPECT_LT(dx.back(), 1e-3 * peak(dx));
  EXPECT_LT(dy.back(), 1e-3 * peak(dy));
  EXPECT_LT(dl.back(), 1e-3 * peak(dl));
}

TEST(Engine, StartingAtKktPointStopsImmediately) {
  const Lasso l = lasso(7);
  const Vector xs = oracle::lasso_fista(l.A, l.b, 200000);
  LadmapState s;
  s.x = xs;
  s.y = l.A * xs - l.b;
  s.lambda = s.y;
  s.beta = 1.0;
  const LadmapResult r = solve(l.problem, {}, s);
  EXPECT_EQ(r.status, Status::Converged);
  EXPECT_LE(r.trace.size(), 1u);
  EXPECT_LT(r.trace.records[0].feasibility, 1e-8);
}

TEST(Engine, IterationCapReportsStatus) {
  const Lasso l = lasso(8);
  LadmapConfig c;
  c.max_iter = 3;
  const LadmapResult r = solve(l.problem, c);
  EXPECT_EQ(r.status, Status::IterationCapped);
  EXPECT_EQ(r.trace.size(), 3u);
}

TEST(Engine, ObserverSeesInitialStateAndEveryIteration) {
  const Lasso l = lasso(9);
  int calls = 0;
  const LadmapResult r = solve(l.problem, {}, std::nullopt, [&](const LadmapState&) { ++calls; });
  EXPECT_EQ(calls, r.state.k + 1);
}
