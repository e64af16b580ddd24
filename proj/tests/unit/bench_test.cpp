#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "ladmap/pipeline/bench.hpp"

using namespace ladmap;

namespace {

SyntheticSpec tiny() {
  SyntheticSpec s;
  s.s = 3;
  s.p = 8;
  s.d = 30;
  s.r_tilde = 2;
  return s;
}

}  // namespace

TEST(Bench, MethodNames) {
  for (Method m : all_methods()) EXPECT_EQ(parse_method(to_string(m)), m);
  EXPECT_EQ(all_methods().size(), 5u);
  EXPECT_THROW(parse_method("newton"), InputError);
}

TEST(Bench, EmptySpecsGiveNoRows) {
  BenchConfig c;
  EXPECT_TRUE(run_benchmark(c).empty());
}

TEST(Bench, BothLadmapModesAgree) {
  BenchConfig c;
  c.specs = {tiny()};
  c.methods = {Method::Ladmap, Method::LadmapAcc};
  c.ground_truth.iterations = 300;
  const auto rows = run_benchmark(c);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].iterations, rows[1].iterations);
  EXPECT_NEAR(rows[0].rel_err_z, rows[1].rel_err_z, 1e-6);
  EXPECT_EQ(rows[0].spec, "(3, 8, 30, 2) seed 1");
  EXPECT_EQ(rows[0].status, "converged");
  EXPECT_TRUE(rows[0].error.empty());
}

TEST(Bench, MethodFailureLandsInRow) {
  BenchConfig c;
  c.specs = {tiny()};
  c.methods = {Method::Adm, Method::Ladmap};
  c.settings.adm.rho = 0.5;  // invalid
  c.ground_truth.iterations = 100;
  const auto rows = run_benchmark(c);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].status, "error");
  EXPECT_FALSE(rows[0].error.empty());
  EXPECT_TRUE(std::isnan(rows[0].rel_err_z));
  EXPECT_EQ(rows[1].status, "converged");
}

TEST(Bench, CsvHeaderAndRowCount) {
  BenchRow r;
  r.spec = "(1, 2, 3, 4)";
  r.method = "ladmap";
  r.status = "converged";
  std::ostringstream os;
  write_csv(os, {r, r});
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "spec,method,seconds,iterations,rel_err_z,rel_err_e,accuracy,feasibility,status,error");
  int n = 0;
  while (std::getline(is, line)) ++n;
  EXPECT_EQ(n, 2);
}

TEST(Bench, ParseSuite) {
  std::istringstream in(
      "# comment\n"
      "spec = 10,20,200,5\n"
      "spec = 15,20,300,5\n"
      "seed = 1,2,3\n"
      "mu = 0.2\n"
      "methods = ladmap,apg\n"
      "eps1 = 1e-3\n"
      "max_iter = 99\n"
      "gt_iterations = 500\n"
      "cache_dir = /tmp/x\n");
  const BenchConfig c = parse_suite(in);
  ASSERT_EQ(c.specs.size(), 6u);
  EXPECT_EQ(c.specs[0].d, 200);
  EXPECT_DOUBLE_EQ(c.mu, 0.2);
  ASSERT_EQ(c.methods.size(), 2u);
  EXPECT_EQ(c.methods[1], Method::Apg);
  EXPECT_DOUBLE_EQ(c.settings.lrr.eps1, 1e-3);
  EXPECT_EQ(c.settings.lrr.max_iter, 99);
  EXPECT_EQ(c.ground_truth.iterations, 500);
  ASSERT_TRUE(c.ground_truth.cache_dir.has_value());
}

TEST(Bench, ParseSuiteErrors) {
  for (const char* text : {"spec = 1,2,3\n", "mu = abc\n", "bogus = 1\n", "no equals sign\n",
                           "methods = newton\n", "max_iter = 2.5\n"}) {
    std::istringstream in(text);
    EXPECT_THROW(parse_suite(in), InputError) << text;
  }
  EXPECT_THROW(load_suite("/nonexistent/suite.txt"), InputError);
}
