#include "ladmap/pipeline/matrix_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

namespace ladmap {

namespace {

constexpr std::array<char, 8> kMagic{'L', 'R', 'R', 'M', 'A', 'T', '0', '1'};

static_assert(std::endian::native == std::endian::little ||
                  std::endian::native == std::endian::big,
              "mixed-endian hosts are not supported");

template <typename T>
T to_little(T v) {
  if constexpr (std::endian::native == std::endian::big) {
    auto bytes = std::bit_cast<std::array<unsigned char, sizeof(T)>>(v);
    std::reverse(bytes.begin(), bytes.end());
    return std::bit_cast<T>(bytes);
  }
  return v;
}

template <typename T>
void put(std::ostream& out, T v) {
  v = to_little(v);
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  T v;
  if (!in.read(reinterpret_cast<char*>(&v), sizeof(T)))
    throw InputError("binary matrix: truncated file");
  return to_little(v);
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

double parse_double(const std::string& field, std::size_t line) {
  const std::string t = trim(field);
  double v = 0.0;
  const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || p != t.data() + t.size() || t.empty())
    throw InputError("csv line " + std::to_string(line) + ": bad number '" + t + "'");
  return v;
}

Index parse_dim(const std::string& field) {
  const std::string t = trim(field);
  long long v = 0;
  const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || p != t.data() + t.size() || v < 0)
    throw InputError("csv header: bad dimension '" + t + "'");
  return static_cast<Index>(v);
}

bool is_binary(const std::filesystem::path& path) { return path.extension() == ".bin"; }

}  // namespace

void write_matrix_csv(std::ostream& out, const Matrix& M) {
  out.precision(std::numeric_limits<double>::max_digits10);
  out << M.rows() << ',' << M.cols() << '\n';
  for (Index i = 0; i < M.rows(); ++i) {
    for (Index j = 0; j < M.cols(); ++j) {
      if (j > 0) out << ',';
      out << M(i, j);
    }
    out << '\n';
  }
}

Matrix read_matrix_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("csv: missing header");
  const auto comma = line.find(',');
  if (comma == std::string::npos) throw InputError("csv header must be 'rows,cols'");
  const Index rows = parse_dim(line.substr(0, comma));
  const Index cols = parse_dim(line.substr(comma + 1));

  Matrix M(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    if (!std::getline(in, line))
      throw InputError("csv: expected " + std::to_string(rows) + " data rows");
    std::stringstream ss(line);
    std::string field;
    Index j = 0;
    while (std::getline(ss, field, ',')) {
      if (j >= cols) throw InputError("csv line " + std::to_string(i + 2) + ": too many fields");
      M(i, j++) = parse_double(field, static_cast<std::size_t>(i + 2));
    }
    if (j != cols) throw InputError("csv line " + std::to_string(i + 2) + ": too few fields");
  }
  return M;
}

void write_matrix_binary(std::ostream& out, const Matrix& M) {
  if (M.rows() > std::numeric_limits<std::uint32_t>::max() ||
      M.cols() > std::numeric_limits<std::uint32_t>::max())
    throw InputError("binary matrix: dimensions exceed 32 bits");
  out.write(kMagic.data(), kMagic.size());
  put<std::uint32_t>(out, static_cast<std::uint32_t>(M.rows()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(M.cols()));
  if constexpr (std::endian::native == std::endian::little) {
    out.write(reinterpret_cast<const char*>(M.data()),
              static_cast<std::streamsize>(M.size() * sizeof(double)));
  } else {
    for (Index i = 0; i < M.size(); ++i) put<double>(out, M.data()[i]);
  }
}

Matrix read_matrix_binary(std::istream& in) {
  std::array<char, 8> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic)
    throw InputError("binary matrix: bad magic");
  const auto rows = get<std::uint32_t>(in);
  const auto cols = get<std::uint32_t>(in);
  Matrix M(rows, cols);
  if constexpr (std::endian::native == std::endian::little) {
    if (!in.read(reinterpret_cast<char*>(M.data()),
                 static_cast<std::streamsize>(M.size() * sizeof(double))))
      throw InputError("binary matrix: truncated file");
  } else {
    for (Index i = 0; i < M.size(); ++i) M.data()[i] = get<double>(in);
  }
  return M;
}

void write_matrix(const std::filesystem::path& path, const Matrix& M) {
  std::ofstream out(path, is_binary(path) ? std::ios::binary : std::ios::out);
  if (!out) throw InputError("cannot open " + path.string() + " for writing");
  if (is_binary(path)) {
    write_matrix_binary(out, M);
  } else {
    write_matrix_csv(out, M);
  }
  if (!out) throw InputError("write failed: " + path.string());
}

Matrix read_matrix(const std::filesystem::path& path) {
  std::ifstream in(path, is_binary(path) ? std::ios::binary : std::ios::in);
  if (!in) throw InputError("cannot open " + path.string());
  return is_binary(path) ? read_matrix_binary(in) : read_matrix_csv(in);
}

void write_labels(const std::filesystem::path& path, const std::vector<int>& labels) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open " + path.string() + " for writing");
  for (int l : labels) out << l << '\n';
  if (!out) throw InputError("write failed: " + path.string());
}

std::vector<int> read_labels(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::vector<int> labels;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    const std::string t = trim(line);
    if (t.empty()) continue;
    int v = 0;
    const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size())
      throw InputError(path.string() + ":" + std::to_string(n) + ": bad label '" + t + "'");
    labels.push_back(v);
  }
  return labels;
}

void write_skinny(const std::filesystem::path& prefix, const SkinnySvd& Z,
                  const std::string& ext) {
  const std::string base = prefix.string();
  write_matrix(base + ".U" + ext, Z.U);
  write_matrix(base + ".S" + ext, Matrix(Z.sigma));
  write_matrix(base + ".V" + ext, Z.V);
}

SkinnySvd read_skinny(const std::filesystem::path& prefix) {
  const std::string base = prefix.string();
  std::string ext = ".csv";
  if (!std::filesystem::exists(base + ".U" + ext)) ext = ".bin";
  SkinnySvd Z;
  Z.U = read_matrix(base + ".U" + ext);
  const Matrix S = read_matrix(base + ".S" + ext);
  Z.V = read_matrix(base + ".V" + ext);
  if (S.cols() > 1) throw InputError("skinny factors: S must be a single column");
  Z.sigma = S.size() > 0 ? Vector(S.col(0)) : Vector();
  if (Z.U.cols() != Z.sigma.size() || Z.V.cols() != Z.sigma.size())
    throw InputError("skinny factors: U, S, V disagree on rank");
  return Z;
}

}  // namespace ladmap
