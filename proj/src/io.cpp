#include "nyspca/io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <limits>
#include <sstream>
#include <vector>

#include "nyspca/errors.hpp"

namespace nyspca {

namespace {

template <typename T>
void put_le(std::string& buf, T value) {
  using U = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>;
  auto bits = std::bit_cast<U>(value);
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    buf.push_back(static_cast<char>(bits & 0xFFu));
    bits >>= 8;
  }
}

template <typename T>
T get_le(const char* p) {
  using U = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>;
  U bits = 0;
  for (std::size_t i = sizeof(T); i-- > 0;) {
    bits = (bits << 8) | static_cast<unsigned char>(p[i]);
  }
  return std::bit_cast<T>(bits);
}

struct Header {
  std::uint64_t rows;
  std::uint64_t cols;
};

Header parse_header(const char* p, std::size_t available, const std::filesystem::path& path) {
  const std::string where = path.string() + ": ";
  if (available < kDmatHeaderBytes)
    throw FormatError(where + "truncated header: expected " + std::to_string(kDmatHeaderBytes) +
                      " bytes, got " + std::to_string(available));
  if (std::memcmp(p, "DMAT", 4) != 0) throw FormatError(where + "bad magic at byte 0");
  const auto version = get_le<std::uint32_t>(p + 4);
  if (version != kDmatVersion)
    throw FormatError(where + "version field at byte 4: expected " + std::to_string(kDmatVersion) +
                      ", got " + std::to_string(version));
  Header h{get_le<std::uint64_t>(p + 8), get_le<std::uint64_t>(p + 16)};
  if (h.rows == 0) throw FormatError(where + "rows field at byte 8 is zero");
  if (h.cols == 0) throw FormatError(where + "cols field at byte 16 is zero");
  if (h.rows > std::numeric_limits<std::uint64_t>::max() / 8 / h.cols)
    throw FormatError(where + "dimension fields overflow the payload size");
  return h;
}

double checked_value(const char* p, std::size_t offset, const std::filesystem::path& path) {
  const double v = get_le<double>(p);
  if (!std::isfinite(v))
    throw FormatError(path.string() + ": non-finite value at byte " + std::to_string(offset));
  return v;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

}  // namespace

void write_matrix(const std::filesystem::path& path, const Mat& m) {
  std::string buf;
  buf.reserve(kDmatHeaderBytes + 8 * m.size());
  buf.append("DMAT", 4);
  put_le(buf, kDmatVersion);
  put_le(buf, static_cast<std::uint64_t>(m.rows()));
  put_le(buf, static_cast<std::uint64_t>(m.cols()));
  for (double v : m.values()) put_le(buf, v);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

static FormatError length_error(const std::filesystem::path& path, std::uint64_t expected_file,
                                std::uint64_t actual_file) {
  const auto payload = [](std::uint64_t f) {
    return f >= kDmatHeaderBytes ? f - kDmatHeaderBytes : 0;
  };
  return FormatError(path.string() + ": payload length mismatch: expected " +
                     std::to_string(payload(expected_file)) + " bytes, got " +
                     std::to_string(payload(actual_file)) + " (file " + std::to_string(actual_file) +
                     " bytes incl. " + std::to_string(kDmatHeaderBytes) + "-byte header)");
}

Mat read_matrix(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::string raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const Header h = parse_header(raw.data(), raw.size(), path);
  const std::uint64_t expected = kDmatHeaderBytes + 8 * h.rows * h.cols;
  if (raw.size() != expected) throw length_error(path, expected, raw.size());
  std::vector<double> data(h.rows * h.cols);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const std::size_t off = kDmatHeaderBytes + 8 * i;
    data[i] = checked_value(raw.data() + off, off, path);
  }
  return Mat(h.rows, h.cols, std::move(data));
}

DmatRowReader::DmatRowReader(const std::filesystem::path& path) : path_(path), in_(open_in(path)) {
  std::array<char, kDmatHeaderBytes> head{};
  in_.read(head.data(), head.size());
  const Header h = parse_header(head.data(), static_cast<std::size_t>(in_.gcount()), path);
  rows_ = h.rows;
  cols_ = h.cols;
  in_.seekg(0, std::ios::end);
  const auto size = static_cast<std::uint64_t>(in_.tellg());
  const std::uint64_t expected = kDmatHeaderBytes + 8 * h.rows * h.cols;
  if (size != expected) throw length_error(path, expected, size);
  in_.seekg(kDmatHeaderBytes);
  raw_.resize(8 * cols_);
}

bool DmatRowReader::advance() {
  if (next_row_ >= rows_) return false;
  in_.read(raw_.data(), static_cast<std::streamsize>(raw_.size()));
  const std::size_t base = kDmatHeaderBytes + 8 * cols_ * next_row_;
  if (static_cast<std::size_t>(in_.gcount()) != raw_.size())
    throw FormatError(path_.string() + ": short read at byte " +
                      std::to_string(base + static_cast<std::size_t>(in_.gcount())));
  ++next_row_;
  return true;
}

double DmatRowReader::value(std::size_t j) const {
  const std::size_t base = kDmatHeaderBytes + 8 * cols_ * (next_row_ - 1);
  return checked_value(raw_.data() + 8 * j, base + 8 * j, path_);
}

bool DmatRowReader::read_row(std::span<double> out) {
  if (out.size() != cols_) throw InvalidParameter("DmatRowReader: buffer length mismatch");
  if (!advance()) return false;
  for (std::size_t j = 0; j < cols_; ++j) out[j] = value(j);
  return true;
}

std::string format_double(double v) {
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

void write_csv_matrix(const std::filesystem::path& path, const Mat& m, bool with_header) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  if (with_header) {
    for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? "," : "") << "c" << j;
    out << '\n';
  }
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto r = m.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) out << (j ? "," : "") << format_double(r[j]);
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

namespace {

bool parse_field(std::string_view f, double& v) {
  while (!f.empty() && (f.front() == ' ' || f.front() == '\t')) f.remove_prefix(1);
  while (!f.empty() && (f.back() == ' ' || f.back() == '\t' || f.back() == '\r')) f.remove_suffix(1);
  if (!f.empty() && f.front() == '+') f.remove_prefix(1);
  if (f.empty()) return false;
  auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
  return ec == std::errc() && ptr == f.data() + f.size();
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

Mat read_csv_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<double> data;
  std::size_t cols = 0, rows = 0, line_no = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split(line);
    std::vector<double> vals(fields.size());
    bool numeric = true;
    for (std::size_t j = 0; j < fields.size() && numeric; ++j) numeric = parse_field(fields[j], vals[j]);
    if (!numeric) {
      if (rows == 0 && cols == 0 && line_no == 1) continue;  // header
      throw FormatError(path.string() + ": non-numeric field on line " + std::to_string(line_no));
    }
    if (cols == 0) cols = vals.size();
    if (vals.size() != cols)
      throw FormatError(path.string() + ": line " + std::to_string(line_no) + " has " +
                        std::to_string(vals.size()) + " fields, expected " + std::to_string(cols));
    for (double v : vals)
      if (!std::isfinite(v))
        throw FormatError(path.string() + ": non-finite value on line " + std::to_string(line_no));
    data.insert(data.end(), vals.begin(), vals.end());
    ++rows;
  }
  if (rows == 0) throw FormatError(path.string() + ": no data rows");
  return Mat(rows, cols, std::move(data));
}

void save_matrix(const std::filesystem::path& path, const Mat& m) {
  if (path.extension() == ".csv")
    write_csv_matrix(path, m);
  else
    write_matrix(path, m);
}

Mat load_matrix(const std::filesystem::path& path) {
  return path.extension() == ".csv" ? read_csv_matrix(path) : read_matrix(path);
}

}  // namespace nyspca
