#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace nyspca {

/// Dense row-major matrix of doubles. Zero-sized dimensions are allowed so
/// that empty blocks (e.g. A21 under a full selection) have a representation.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols, double fill = 0.0);
  Mat(std::size_t rows, std::size_t cols, std::vector<double> data);

  static Mat identity(std::size_t n);
  static Mat from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static Mat diagonal(std::span<const double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<double> values() noexcept { return data_; }
  std::span<const double> values() const noexcept { return data_; }

  std::vector<double> column(std::size_t j) const;
  Mat transpose() const;
  /// First `k` columns.
  Mat leading_columns(std::size_t k) const;

  bool all_finite() const noexcept;

  friend bool operator==(const Mat&, const Mat&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Mat operator+(const Mat& a, const Mat& b);
Mat operator-(const Mat& a, const Mat& b);
Mat operator*(double s, const Mat& a);

/// Multiplies column j by scale[j].
Mat scale_columns(const Mat& a, std::span<const double> scale);

double frobenius_norm(const Mat& a);
double max_abs(const Mat& a);
double trace(const Mat& a);
/// max_ij |a_ij - a_ji|; requires a square matrix.
double asymmetry(const Mat& a);

Mat take_columns(const Mat& a, std::span<const std::size_t> idx);
Mat take_rows(const Mat& a, std::span<const std::size_t> idx);
Mat take_block(const Mat& a, std::span<const std::size_t> rows, std::span<const std::size_t> cols);
Mat vstack(const Mat& top, const Mat& bottom);

}  // namespace nyspca
