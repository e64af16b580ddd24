#include "ladmap/trace.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>

#include "ladmap/errors.hpp"

namespace ladmap {

const char* to_string(Status s) {
  switch (s) {
    case Status::Converged:
      return "converged";
    case Status::IterationCapped:
      return "iteration-capped";
  }
  return "unknown";
}

std::vector<double> ConvergenceTrace::iteration_times_ms() const {
  std::vector<double> out;
  out.reserve(records.size());
  double prev = 0.0;
  for (const auto& r : records) {
    out.push_back(r.time_ms - prev);
    prev = r.time_ms;
  }
  return out;
}

void ConvergenceTrace::write_csv(std::ostream& out) const {
  out << "k,feas_res,kkt2_res,beta,time_ms,objective\n";
  const auto prec = out.precision(10);
  for (const auto& r : records) {
    out << r.k << ',' << r.feasibility << ',' << r.kkt2 << ',' << r.beta << ','
        << r.time_ms << ',' << r.objective << '\n';
  }
  out.precision(prec);
}

void ConvergenceTrace::write_csv(const std::filesystem::path& path) const {
  std::ofstream f(path);
  if (!f) throw InputError("cannot open trace file " + path.string());
  write_csv(f);
}

}  // namespace ladmap
