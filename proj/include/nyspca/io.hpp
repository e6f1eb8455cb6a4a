#pragma once

// Matrix files.
//
// DMAT layout (all little-endian):
//   offset 0   4 bytes   magic "DMAT"
//   offset 4   u32       version = 1
//   offset 8   u64       rows
//   offset 16  u64       cols
//   offset 24  f64[rows*cols], row-major
//
// CSV: one row per line, comma separated, optional single header line,
// values written with the shortest representation that round-trips.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>

#include "nyspca/mat.hpp"

namespace nyspca {

inline constexpr std::uint32_t kDmatVersion = 1;
inline constexpr std::size_t kDmatHeaderBytes = 24;

void write_matrix(const std::filesystem::path& path, const Mat& m);
Mat read_matrix(const std::filesystem::path& path);

/// Sequential row access to a DMAT file without loading the payload.
class DmatRowReader {
 public:
  explicit DmatRowReader(const std::filesystem::path& path);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  /// Fills `out` (length cols()) with the next row; false once exhausted.
  bool read_row(std::span<double> out);
  /// Loads the next row into the internal byte buffer without decoding it;
  /// false once exhausted. Decode entries with value().
  bool advance();
  /// Entry j of the row loaded by the last advance().
  double value(std::size_t j) const;
  /// Size of the internal row buffer, in matrix entries.
  std::size_t buffer_entries() const noexcept { return raw_.size() / 8; }

 private:
  std::filesystem::path path_;
  std::ifstream in_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t next_row_ = 0;
  std::string raw_;
};

void write_csv_matrix(const std::filesystem::path& path, const Mat& m, bool with_header = false);
Mat read_csv_matrix(const std::filesystem::path& path);

/// Picks CSV for a ".csv" extension, DMAT otherwise.
void save_matrix(const std::filesystem::path& path, const Mat& m);
Mat load_matrix(const std::filesystem::path& path);

/// Shortest decimal string that parses back to exactly `v`.
std::string format_double(double v);

}  // namespace nyspca
