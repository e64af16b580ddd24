#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ladmap/baselines.hpp"
#include "ladmap/pipeline/ground_truth.hpp"
#include "ladmap/pipeline/synthetic.hpp"

namespace ladmap {

enum class Method { Ladmap, LadmapAcc, Adm, Ladm, Apg };

/// "ladmap", "ladmap-acc", "adm", "ladm", "apg"
const char* to_string(Method m);
/// Throws InputError on an unknown name.
Method parse_method(const std::string& name);
std::vector<Method> all_methods();

struct SolverSettings {
  LrrConfig lrr;
  AdmConfig adm;
  ApgConfig apg;
};

LrrResult run_method(Method m, const LrrProblem& problem, const SolverSettings& settings);

struct BenchRow {
  std::string spec;
  std::string method;
  double seconds = 0.0;
  int iterations = 0;
  double rel_err_z = 0.0;
  double rel_err_e = 0.0;
  double accuracy = 0.0;
  double feasibility = 0.0;
  std::string status;
  /// Non-empty when the method threw; the numeric fields are then NaN.
  std::string error;
};

struct BenchConfig {
  std::vector<SyntheticSpec> specs;
  double mu = 0.1;
  std::vector<Method> methods = all_methods();
  SolverSettings settings;
  GroundTruthOptions ground_truth;
  std::uint64_t cluster_seed = 7;
};

/// Each spec is generated once and its ground truth established once; every
/// method then runs on the same data. Method failures end up in the row.
std::vector<BenchRow> run_benchmark(const BenchConfig& config);

/// Aligned columns, errors and accuracy in percent.
void write_table(std::ostream& out, const std::vector<BenchRow>& rows);
/// Header: spec,method,seconds,iterations,rel_err_z,rel_err_e,accuracy,feasibility,status,error
void write_csv(std::ostream& out, const std::vector<BenchRow>& rows);

/// key=value lines, '#' starts a comment. Keys: spec = s,p,d,r (repeatable),
/// seed, corrupt_frac, noise_scale, mu, methods, eps1, eps2, beta_max, rho0,
/// max_iter, cache_dir, gt_iterations, gt_beta_max, cluster_seed.
/// seed takes a comma list; every spec line is run once per seed.
/// seed/corrupt_frac/noise_scale apply to every spec line. Throws InputError.
BenchConfig parse_suite(std::istream& in);
BenchConfig load_suite(const std::filesystem::path& path);

}  // namespace ladmap
