#include "ladmap/pipeline/ground_truth.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "ladmap/pipeline/matrix_io.hpp"

namespace ladmap {

namespace {

struct Fnv1a {
  std::uint64_t h = 0xcbf29ce484222325ull;
  void bytes(const void* p, std::size_t n) {
    const auto* c = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= c[i];
      h *= 0x100000001b3ull;
    }
  }
  template <typename T>
  void value(T v) { bytes(&v, sizeof(T)); }
};

std::filesystem::path cache_file(const std::filesystem::path& dir, std::uint64_t key) {
  std::ostringstream name;
  name << "gt-" << std::hex << std::setw(16) << std::setfill('0') << key << ".bin";
  return dir / name.str();
}

bool load(const std::filesystem::path& file, const Matrix& X, GroundTruth& gt) {
  std::ifstream in(file, std::ios::binary);
  if (!in) return false;
  try {
    gt.E0 = read_matrix_binary(in);
    gt.Z0.U = read_matrix_binary(in);
    const Matrix s = read_matrix_binary(in);
    gt.Z0.V = read_matrix_binary(in);
    gt.Lambda0 = read_matrix_binary(in);
    const Matrix f = read_matrix_binary(in);
    gt.Z0.sigma = s.size() > 0 ? Vector(s.col(0)) : Vector();
    gt.feasibility = f(0, 0);
  } catch (const InputError&) {
    return false;
  }
  return gt.E0.rows() == X.rows() && gt.E0.cols() == X.cols() &&
         gt.Z0.rows() == X.cols() && gt.Z0.cols() == X.cols();
}

void store(const std::filesystem::path& file, const GroundTruth& gt) {
  std::filesystem::create_directories(file.parent_path());
  const std::filesystem::path tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw InputError("cannot write ground-truth cache " + tmp.string());
    write_matrix_binary(out, gt.E0);
    write_matrix_binary(out, gt.Z0.U);
    write_matrix_binary(out, Matrix(gt.Z0.sigma));
    write_matrix_binary(out, gt.Z0.V);
    write_matrix_binary(out, gt.Lambda0);
    write_matrix_binary(out, Matrix::Constant(1, 1, gt.feasibility));
    if (!out) throw InputError("ground-truth cache write failed");
  }
  std::filesystem::rename(tmp, file);
}

}  // namespace

std::uint64_t ground_truth_key(const Matrix& X, double mu,
                               const GroundTruthOptions& options) {
  Fnv1a f;
  f.value<std::int64_t>(X.rows());
  f.value<std::int64_t>(X.cols());
  f.bytes(X.data(), static_cast<std::size_t>(X.size()) * sizeof(double));
  f.value(mu);
  f.value(options.iterations);
  f.value(options.beta_max);
  f.value(kGroundTruthVersion);
  return f.h;
}

GroundTruth ground_truth(const Matrix& X, double mu, const GroundTruthOptions& options) {
  if (options.iterations < 1) throw ConfigError("ground truth: iterations must be >= 1");
  std::filesystem::path file;
  if (options.cache_dir) {
    file = cache_file(*options.cache_dir, ground_truth_key(X, mu, options));
    GroundTruth cached;
    if (load(file, X, cached)) {
      cached.from_cache = true;
      return cached;
    }
  }

  const LrrProblem problem = LrrProblem::make(X, mu);
  LrrConfig config;
  config.beta_max = options.beta_max;
  config.max_iter = options.iterations;
  config.stop_on_criteria = false;
  LrrResult r = solve_lrr(problem, config, LrrMode::Accelerated);

  GroundTruth gt;
  gt.E0 = std::move(r.E);
  gt.Z0 = std::move(r.Z);
  gt.Lambda0 = std::move(r.Lambda);
  gt.feasibility = r.trace.records.back().feasibility;
  if (options.cache_dir) store(file, gt);
  return gt;
}

}  // namespace ladmap
