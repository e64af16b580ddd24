#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "ladmap/linalg.hpp"

namespace ladmap {

// CSV: first line "rows,cols", then one line per row.
// Binary: 8-byte magic "LRRMAT01", uint32 rows, uint32 cols, then float64
// entries in column-major order, all little-endian.

void write_matrix_csv(std::ostream& out, const Matrix& M);
Matrix read_matrix_csv(std::istream& in);

void write_matrix_binary(std::ostream& out, const Matrix& M);
Matrix read_matrix_binary(std::istream& in);

/// Binary when the extension is ".bin", CSV otherwise. Throws InputError.
void write_matrix(const std::filesystem::path& path, const Matrix& M);
Matrix read_matrix(const std::filesystem::path& path);

/// One integer per line.
void write_labels(const std::filesystem::path& path, const std::vector<int>& labels);
std::vector<int> read_labels(const std::filesystem::path& path);

/// Writes <prefix>.U, .S, .V (and reads them back) in the format chosen by
/// `ext` (".csv" or ".bin"). S is a single column.
void write_skinny(const std::filesystem::path& prefix, const SkinnySvd& Z,
                  const std::string& ext = ".csv");
SkinnySvd read_skinny(const std::filesystem::path& prefix);

}  // namespace ladmap
