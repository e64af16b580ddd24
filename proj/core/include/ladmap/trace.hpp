#pragma once

#include <chrono>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <vector>

namespace ladmap {

enum class Status { Converged, IterationCapped };

const char* to_string(Status s);

struct TraceRecord {
  int k = 0;
  double feasibility = 0.0;  // ||A x + B y - c|| / ||c||
  double kkt2 = 0.0;         // beta_k max(sqrt(eta_A)||dx||, sqrt(eta_B)||dy||) / ||c||
  double beta = 0.0;         // penalty used during iteration k
  double time_ms = 0.0;      // elapsed since the solve started
  double objective = std::numeric_limits<double>::quiet_NaN();
  double dx_norm = 0.0;
  double dy_norm = 0.0;
  double dlambda_norm = 0.0;
  long rank = -1;  // rank of the low-rank block, when there is one
};

struct ConvergenceTrace {
  std::vector<TraceRecord> records;

  std::size_t size() const { return records.size(); }
  bool empty() const { return records.empty(); }

  /// Per-iteration wall time, from successive differences of time_ms.
  std::vector<double> iteration_times_ms() const;

  /// Columns: k,feas_res,kkt2_res,beta,time_ms,objective
  void write_csv(std::ostream& out) const;
  void write_csv(const std::filesystem::path& path) const;
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace ladmap
