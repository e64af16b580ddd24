#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "ladmap/baselines.hpp"
#include "ladmap/pipeline/bench.hpp"
#include "ladmap/pipeline/clustering.hpp"
#include "ladmap/pipeline/matrix_io.hpp"
#include "ladmap/pipeline/metrics.hpp"
#include "ladmap/pipeline/synthetic.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kCapped = 2;

std::string labels_path(const std::string& out) {
  std::filesystem::path p(out);
  return (p.parent_path() / p.stem()).string() + ".labels.csv";
}

}  // namespace

int main(int argc, char** argv) {
  using namespace ladmap;

  CLI::App app{"LADMAP solvers for low-rank representation"};
  app.require_subcommand(1);

  SyntheticSpec spec;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "Generate a synthetic union-of-subspaces dataset");
  gen->add_option("--s", spec.s, "Number of subspaces")->required();
  gen->add_option("--p", spec.p, "Points per subspace")->required();
  gen->add_option("--d", spec.d, "Ambient dimension")->required();
  gen->add_option("--rank", spec.r_tilde, "Subspace rank")->required();
  gen->add_option("--seed", spec.seed, "RNG seed")->capture_default_str();
  gen->add_option("--corrupt-frac", spec.corrupt_frac)->capture_default_str();
  gen->add_option("--noise-scale", spec.noise_scale)->capture_default_str();
  gen->add_option("--out", gen_out, "Output matrix (.csv or .bin)")->required();

  std::string method_name = "ladmap-acc", data_path, trace_path, solve_out;
  double mu = 0.1;
  SolverSettings settings;
  int max_iter = 2000;
  auto* solve = app.add_subcommand("solve", "Solve min ||Z||_* + mu ||E||_21 s.t. X = XZ + E");
  solve->add_option("--method", method_name)
      ->check(CLI::IsMember({"ladmap", "ladmap-acc", "adm", "ladm", "apg"}))
      ->capture_default_str();
  solve->add_option("--mu", mu)->capture_default_str();
  solve->add_option("--data", data_path, "Input matrix")->required()->check(CLI::ExistingFile);
  solve->add_option("--eps1", settings.lrr.eps1)->capture_default_str();
  solve->add_option("--eps2", settings.lrr.eps2)->capture_default_str();
  solve->add_option("--beta-max", settings.lrr.beta_max)->capture_default_str();
  solve->add_option("--rho0", settings.lrr.rho0)->capture_default_str();
  solve->add_option("--max-iter", max_iter)->capture_default_str();
  solve->add_option("--trace", trace_path, "Trace CSV");
  solve->add_option("--out", solve_out, "Prefix for E and the U, S, V factors of Z");

  std::string suite_path, bench_out;
  auto* bench = app.add_subcommand("bench", "Compare solvers on synthetic data");
  bench->add_option("--suite", suite_path, "key=value config")->required()->check(CLI::ExistingFile);
  bench->add_option("--out", bench_out, "CSV output");

  std::string z_prefix, labels;
  Index clusters = 0;
  std::uint64_t cluster_seed = 7;
  auto* cluster = app.add_subcommand("cluster", "Spectral clustering from a solved Z");
  cluster->add_option("--z", z_prefix, "Prefix of the U, S, V files")->required();
  cluster->add_option("--clusters", clusters)->required();
  cluster->add_option("--labels", labels, "Ground-truth labels; prints accuracy");
  cluster->add_option("--seed", cluster_seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*gen) {
      const Dataset data = gen_synthetic(spec);
      write_matrix(gen_out, data.X);
      write_labels(labels_path(gen_out), data.labels);
      std::cout << "wrote " << gen_out << " (" << data.X.rows() << " x " << data.X.cols()
                << ") and " << labels_path(gen_out) << '\n';
      return kOk;
    }

    if (*solve) {
      settings.lrr.max_iter = settings.adm.max_iter = settings.apg.max_iter = max_iter;
      settings.adm.eps1 = settings.apg.eps1 = settings.lrr.eps1;
      settings.adm.eps2 = settings.apg.eps2 = settings.lrr.eps2;
      settings.adm.beta_max = settings.lrr.beta_max;
      const LrrProblem problem = LrrProblem::make(read_matrix(data_path), mu);
      const LrrResult r = run_method(parse_method(method_name), problem, settings);
      if (!trace_path.empty()) r.trace.write_csv(std::filesystem::path(trace_path));
      if (!solve_out.empty()) {
        write_matrix(solve_out + ".E.csv", r.E);
        write_skinny(solve_out, r.Z);
      }
      const auto& last = r.trace.records.back();
      std::cout << method_name << ": " << to_string(r.status) << " after " << r.iterations
                << " iterations, " << r.seconds << " s, rank(Z) = " << r.Z.rank()
                << ", feasibility = " << last.feasibility
                << ", objective = " << problem.objective(r.E, r.Z) << '\n';
      return r.status == Status::Converged ? kOk : kCapped;
    }

    if (*bench) {
      const BenchConfig cfg = load_suite(suite_path);
      const auto rows = run_benchmark(cfg);
      write_table(std::cout, rows);
      if (!bench_out.empty()) {
        std::ofstream out(bench_out);
        if (!out) throw InputError("cannot open " + bench_out);
        write_csv(out, rows);
      }
      for (const auto& row : rows)
        if (row.status != "converged") return kCapped;
      return kOk;
    }

    if (*cluster) {
      const SkinnySvd Z = read_skinny(z_prefix);
      const std::vector<int> pred = cluster_from_Z(Z, clusters, cluster_seed);
      if (!labels.empty()) {
        std::cout << "accuracy " << accuracy(pred, read_labels(labels)) << '\n';
      } else {
        for (int l : pred) std::cout << l << '\n';
      }
      return kOk;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kOk;
}
