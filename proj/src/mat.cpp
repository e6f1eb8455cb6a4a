#include "nyspca/mat.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nyspca/errors.hpp"

namespace nyspca {

Mat::Mat(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Mat::Mat(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw InvalidInput("Mat: data length " + std::to_string(data_.size()) + " != " +
                       std::to_string(rows_) + "x" + std::to_string(cols_));
  }
}

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Mat Mat::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<double> data;
  data.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw InvalidInput("Mat::from_rows: ragged rows");
    data.insert(data.end(), row.begin(), row.end());
  }
  return Mat(r, c, std::move(data));
}

Mat Mat::diagonal(std::span<const double> values) {
  Mat m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

std::vector<double> Mat::column(std::size_t j) const {
  std::vector<double> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

Mat Mat::transpose() const {
  Mat t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Mat Mat::leading_columns(std::size_t k) const {
  if (k > cols_) throw InvalidParameter("leading_columns: k exceeds column count");
  Mat out(rows_, k);
  for (std::size_t i = 0; i < rows_; ++i)
    std::copy_n(data_.data() + i * cols_, k, out.row(i).data());
  return out;
}

bool Mat::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

namespace {
void require_same_shape(const Mat& a, const Mat& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InvalidParameter(std::string(op) + ": shape mismatch");
}
}  // namespace

Mat operator+(const Mat& a, const Mat& b) {
  require_same_shape(a, b, "operator+");
  Mat out = a;
  auto o = out.values();
  auto bv = b.values();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] += bv[i];
  return out;
}

Mat operator-(const Mat& a, const Mat& b) {
  require_same_shape(a, b, "operator-");
  Mat out = a;
  auto o = out.values();
  auto bv = b.values();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] -= bv[i];
  return out;
}

Mat operator*(double s, const Mat& a) {
  Mat out = a;
  for (double& v : out.values()) v *= s;
  return out;
}

Mat scale_columns(const Mat& a, std::span<const double> scale) {
  if (scale.size() != a.cols()) throw InvalidParameter("scale_columns: length mismatch");
  Mat out = a;
  for (std::size_t i = 0; i < out.rows(); ++i) {
    auto r = out.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) r[j] *= scale[j];
  }
  return out;
}

double frobenius_norm(const Mat& a) {
  // scaled accumulation, avoids overflow for large entries
  double scale = 0.0, ssq = 1.0;
  for (double v : a.values()) {
    if (v == 0.0) continue;
    const double av = std::abs(v);
    if (scale < av) {
      ssq = 1.0 + ssq * (scale / av) * (scale / av);
      scale = av;
    } else {
      ssq += (av / scale) * (av / scale);
    }
  }
  return scale * std::sqrt(ssq);
}

double max_abs(const Mat& a) {
  double m = 0.0;
  for (double v : a.values()) m = std::max(m, std::abs(v));
  return m;
}

double trace(const Mat& a) {
  const std::size_t n = std::min(a.rows(), a.cols());
  double t = 0.0;
  for (std::size_t i = 0; i < n; ++i) t += a(i, i);
  return t;
}

double asymmetry(const Mat& a) {
  if (a.rows() != a.cols()) throw InvalidInput("asymmetry: matrix is not square");
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - a(j, i)));
  return m;
}

Mat take_columns(const Mat& a, std::span<const std::size_t> idx) {
  Mat out(a.rows(), idx.size());
  for (std::size_t j : idx)
    if (j >= a.cols()) throw InvalidParameter("take_columns: index out of range");
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto src = a.row(i);
    auto dst = out.row(i);
    for (std::size_t k = 0; k < idx.size(); ++k) dst[k] = src[idx[k]];
  }
  return out;
}

Mat take_rows(const Mat& a, std::span<const std::size_t> idx) {
  Mat out(idx.size(), a.cols());
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (idx[k] >= a.rows()) throw InvalidParameter("take_rows: index out of range");
    std::ranges::copy(a.row(idx[k]), out.row(k).begin());
  }
  return out;
}

Mat take_block(const Mat& a, std::span<const std::size_t> rows,
               std::span<const std::size_t> cols) {
  return take_columns(take_rows(a, rows), cols);
}

Mat vstack(const Mat& top, const Mat& bottom) {
  if (top.cols() != bottom.cols()) throw InvalidParameter("vstack: column mismatch");
  std::vector<double> data(top.values().begin(), top.values().end());
  data.insert(data.end(), bottom.values().begin(), bottom.values().end());
  return Mat(top.rows() + bottom.rows(), top.cols(), std::move(data));
}

}  // namespace nyspca
