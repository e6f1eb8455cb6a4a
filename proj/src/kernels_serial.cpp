#include <string>

#include "nyspca/errors.hpp"
#include "nyspca/kernels.hpp"

namespace nyspca::kernels::serial {

Mat matmul(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) throw InvalidParameter("matmul: inner dimension mismatch");
  Mat c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

Mat matmul_tn(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) throw InvalidParameter("matmul_tn: row count mismatch");
  Mat c(a.cols(), b.cols());
  for (std::size_t i = 0; i < a.cols(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < a.rows(); ++k) s += a(k, i) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

Mat matmul_nt(const Mat& a, const Mat& b) {
  if (a.cols() != b.cols()) throw InvalidParameter("matmul_nt: column count mismatch");
  Mat c(a.rows(), b.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.rows(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(j, k);
      c(i, j) = s;
    }
  return c;
}

std::vector<double> column_means(const Mat& a) {
  std::vector<double> m(a.cols(), 0.0);
  for (std::size_t j = 0; j < a.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) s += a(i, j);
    m[j] = s / static_cast<double>(a.rows());
  }
  return m;
}

Mat subtract_row(const Mat& a, const std::vector<double>& r) {
  if (r.size() != a.cols()) throw InvalidParameter("subtract_row: length mismatch");
  Mat out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) - r[j];
  return out;
}

}  // namespace nyspca::kernels::serial
