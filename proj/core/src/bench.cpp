#include "ladmap/pipeline/bench.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "ladmap/pipeline/clustering.hpp"
#include "ladmap/pipeline/metrics.hpp"

namespace ladmap {

const char* to_string(Method m) {
  switch (m) {
    case Method::Ladmap: return "ladmap";
    case Method::LadmapAcc: return "ladmap-acc";
    case Method::Adm: return "adm";
    case Method::Ladm: return "ladm";
    case Method::Apg: return "apg";
  }
  return "?";
}

Method parse_method(const std::string& name) {
  for (Method m : all_methods())
    if (name == to_string(m)) return m;
  throw InputError("unknown method '" + name + "'");
}

std::vector<Method> all_methods() {
  return {Method::Apg, Method::Adm, Method::Ladm, Method::Ladmap, Method::LadmapAcc};
}

LrrResult run_method(Method m, const LrrProblem& problem, const SolverSettings& settings) {
  switch (m) {
    case Method::Ladmap: return solve_lrr(problem, settings.lrr, LrrMode::Standard);
    case Method::LadmapAcc: return solve_lrr(problem, settings.lrr, LrrMode::Accelerated);
    case Method::Adm: return solve_adm_lrr(problem, settings.adm);
    case Method::Ladm: {
      LrrConfig c = settings.lrr;
      c.beta0.reset();
      return solve_ladm_lrr(problem, c);
    }
    case Method::Apg: return solve_apg_lrr(problem, settings.apg);
  }
  throw InputError("unknown method");
}

std::vector<BenchRow> run_benchmark(const BenchConfig& config) {
  std::vector<BenchRow> rows;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const SyntheticSpec& spec : config.specs) {
    const Dataset data = gen_synthetic(spec);
    const GroundTruth gt = ground_truth(data.X, config.mu, config.ground_truth);
    const LrrProblem problem = LrrProblem::make(data.X, config.mu);
    std::ostringstream label;
    label << spec.label() << " seed " << spec.seed;

    for (Method m : config.methods) {
      BenchRow row;
      row.spec = label.str();
      row.method = to_string(m);
      try {
        const LrrResult r = run_method(m, problem, config.settings);
        row.seconds = r.seconds;
        row.iterations = r.iterations;
        row.status = to_string(r.status);
        row.feasibility = r.trace.empty() ? nan : r.trace.records.back().feasibility;
        const RelativeErrors err = relative_errors(r.E, r.Z, gt.E0, gt.Z0);
        row.rel_err_z = err.z;
        row.rel_err_e = err.e;
        row.accuracy = spec.s >= 2
                           ? accuracy(cluster_from_Z(r.Z, spec.s, config.cluster_seed),
                                      data.labels)
                           : 1.0;
      } catch (const std::exception& e) {
        row.error = e.what();
        row.status = "error";
        row.seconds = row.rel_err_z = row.rel_err_e = row.accuracy = nan;
        row.feasibility = nan;
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void write_table(std::ostream& out, const std::vector<BenchRow>& rows) {
  std::size_t spec_w = 4, method_w = 6;
  for (const auto& r : rows) {
    spec_w = std::max(spec_w, r.spec.size());
    method_w = std::max(method_w, r.method.size());
  }
  const auto flags = out.flags();
  out << std::left << std::setw(static_cast<int>(spec_w)) << "spec" << "  "
      << std::setw(static_cast<int>(method_w)) << "method" << std::right
      << std::setw(10) << "time(s)" << std::setw(7) << "iter" << std::setw(10)
      << "errZ(%)" << std::setw(10) << "errE(%)" << std::setw(9) << "acc(%)"
      << "  status\n";
  out << std::fixed;
  for (const auto& r : rows) {
    out << std::left << std::setw(static_cast<int>(spec_w)) << r.spec << "  "
        << std::setw(static_cast<int>(method_w)) << r.method << std::right
        << std::setprecision(3) << std::setw(10) << r.seconds << std::setw(7)
        << r.iterations << std::setprecision(4) << std::setw(10) << 100.0 * r.rel_err_z
        << std::setw(10) << 100.0 * r.rel_err_e << std::setprecision(1) << std::setw(9)
        << 100.0 * r.accuracy << "  " << r.status;
    if (!r.error.empty()) out << " (" << r.error << ')';
    out << '\n';
  }
  out.flags(flags);
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  const auto prec = out.precision(10);
  out << "spec,method,seconds,iterations,rel_err_z,rel_err_e,accuracy,feasibility,status,error\n";
  for (const auto& r : rows) {
    out << csv_field(r.spec) << ',' << r.method << ',' << r.seconds << ','
        << r.iterations << ',' << r.rel_err_z << ',' << r.rel_err_e << ','
        << r.accuracy << ',' << r.feasibility << ',' << r.status << ','
        << csv_field(r.error) << '\n';
  }
  out.precision(prec);
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw InputError("suite: '" + key + "' expects a number, got '" + v + "'");
  }
}

long long to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const long long i = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return i;
  } catch (const std::exception&) {
    throw InputError("suite: '" + key + "' expects an integer, got '" + v + "'");
  }
}

}  // namespace

BenchConfig parse_suite(std::istream& in) {
  BenchConfig cfg;
  std::vector<SyntheticSpec> shapes;
  std::vector<std::uint64_t> seeds{1};
  double corrupt_frac = SyntheticSpec{}.corrupt_frac;
  double noise_scale = SyntheticSpec{}.noise_scale;

  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InputError("suite line " + std::to_string(n) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "spec") {
      const auto parts = split_list(value);
      if (parts.size() != 4)
        throw InputError("suite line " + std::to_string(n) + ": spec needs s,p,d,r");
      SyntheticSpec s;
      s.s = to_int(key, parts[0]);
      s.p = to_int(key, parts[1]);
      s.d = to_int(key, parts[2]);
      s.r_tilde = to_int(key, parts[3]);
      shapes.push_back(s);
    } else if (key == "seed") {
      seeds.clear();
      for (const auto& v : split_list(value))
        seeds.push_back(static_cast<std::uint64_t>(to_int(key, v)));
      if (seeds.empty()) throw InputError("suite: seed list is empty");
    } else if (key == "corrupt_frac") {
      corrupt_frac = to_double(key, value);
    } else if (key == "noise_scale") {
      noise_scale = to_double(key, value);
    } else if (key == "mu") {
      cfg.mu = to_double(key, value);
    } else if (key == "methods") {
      cfg.methods.clear();
      for (const auto& v : split_list(value)) cfg.methods.push_back(parse_method(v));
    } else if (key == "eps1") {
      cfg.settings.lrr.eps1 = cfg.settings.adm.eps1 = cfg.settings.apg.eps1 = to_double(key, value);
    } else if (key == "eps2") {
      cfg.settings.lrr.eps2 = cfg.settings.adm.eps2 = cfg.settings.apg.eps2 = to_double(key, value);
    } else if (key == "beta_max") {
      cfg.settings.lrr.beta_max = to_double(key, value);
    } else if (key == "rho0") {
      cfg.settings.lrr.rho0 = to_double(key, value);
    } else if (key == "max_iter") {
      const int m = static_cast<int>(to_int(key, value));
      cfg.settings.lrr.max_iter = cfg.settings.adm.max_iter = cfg.settings.apg.max_iter = m;
    } else if (key == "cache_dir") {
      cfg.ground_truth.cache_dir = value;
    } else if (key == "gt_iterations") {
      cfg.ground_truth.iterations = static_cast<int>(to_int(key, value));
    } else if (key == "gt_beta_max") {
      cfg.ground_truth.beta_max = to_double(key, value);
    } else if (key == "cluster_seed") {
      cfg.cluster_seed = static_cast<std::uint64_t>(to_int(key, value));
    } else {
      throw InputError("suite line " + std::to_string(n) + ": unknown key '" + key + "'");
    }
  }

  for (const auto& shape : shapes) {
    for (auto seed : seeds) {
      SyntheticSpec s = shape;
      s.seed = seed;
      s.corrupt_frac = corrupt_frac;
      s.noise_scale = noise_scale;
      s.validate();
      cfg.specs.push_back(s);
    }
  }
  return cfg;
}

BenchConfig load_suite(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open suite " + path.string());
  return parse_suite(in);
}

}  // namespace ladmap
