#include <omp.h>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>

#include "nyspca/errors.hpp"
#include "nyspca/kernels.hpp"

namespace nyspca::kernels {

namespace {

std::atomic<int> g_threads{0};

int env_threads() {
  if (const char* env = std::getenv("NYSPCA_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return omp_get_max_threads();
}

// Rows of C handled together in matmul_tn; keeps the C block cache-resident.
constexpr std::ptrdiff_t kTnBlock = 32;

}  // namespace

int default_threads() {
  int n = g_threads.load(std::memory_order_relaxed);
  if (n == 0) {
    n = env_threads();
    g_threads.store(n, std::memory_order_relaxed);
  }
  return n;
}

void set_threads(int n) { g_threads.store(n > 0 ? n : env_threads(), std::memory_order_relaxed); }

namespace omp {

Mat matmul(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) throw InvalidParameter("matmul: inner dimension mismatch");
  Mat c(a.rows(), b.cols());
  const auto m = static_cast<std::ptrdiff_t>(a.rows());
  const std::size_t inner = a.cols();
#pragma omp parallel for schedule(static) num_threads(default_threads())
  for (std::ptrdiff_t i = 0; i < m; ++i) {
    double* crow = c.row(static_cast<std::size_t>(i)).data();
    const double* arow = a.row(static_cast<std::size_t>(i)).data();
    const std::size_t nc = b.cols();
    for (std::size_t k = 0; k < inner; ++k) {
      const double aik = arow[k];
      const double* brow = b.row(k).data();
      for (std::size_t j = 0; j < nc; ++j) crow[j] += aik * brow[j];
    }
  }
  return c;
}

Mat matmul_tn(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) throw InvalidParameter("matmul_tn: row count mismatch");
  Mat c(a.cols(), b.cols());
  const auto out_rows = static_cast<std::ptrdiff_t>(a.cols());
  const std::size_t nc = b.cols();
  const std::size_t shared = a.rows();
#pragma omp parallel for schedule(dynamic, 1) num_threads(default_threads())
  for (std::ptrdiff_t i0 = 0; i0 < out_rows; i0 += kTnBlock) {
    const auto i1 = std::min(out_rows, i0 + kTnBlock);
    for (std::size_t k = 0; k < shared; ++k) {
      const double* arow = a.row(k).data();
      const double* brow = b.row(k).data();
      for (std::ptrdiff_t i = i0; i < i1; ++i) {
        const double aki = arow[i];
        double* crow = c.row(static_cast<std::size_t>(i)).data();
        for (std::size_t j = 0; j < nc; ++j) crow[j] += aki * brow[j];
      }
    }
  }
  return c;
}

Mat matmul_nt(const Mat& a, const Mat& b) {
  if (a.cols() != b.cols()) throw InvalidParameter("matmul_nt: column count mismatch");
  Mat c(a.rows(), b.rows());
  const auto m = static_cast<std::ptrdiff_t>(a.rows());
  const std::size_t inner = a.cols();
#pragma omp parallel for schedule(static) num_threads(default_threads())
  for (std::ptrdiff_t i = 0; i < m; ++i) {
    const double* arow = a.row(static_cast<std::size_t>(i)).data();
    double* crow = c.row(static_cast<std::size_t>(i)).data();
    for (std::size_t j = 0; j < b.rows(); ++j) {
      const double* brow = b.row(j).data();
      double s = 0.0;
      for (std::size_t k = 0; k < inner; ++k) s += arow[k] * brow[k];
      crow[j] = s;
    }
  }
  return c;
}

std::vector<double> column_means(const Mat& a) {
  const auto p = static_cast<std::ptrdiff_t>(a.cols());
  std::vector<double> m(a.cols(), 0.0);
  const double n = static_cast<double>(a.rows());
  constexpr std::ptrdiff_t block = 256;
#pragma omp parallel for schedule(static) num_threads(default_threads())
  for (std::ptrdiff_t j0 = 0; j0 < p; j0 += block) {
    const auto j1 = std::min(p, j0 + block);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      const double* arow = a.row(i).data();
      for (std::ptrdiff_t j = j0; j < j1; ++j) m[j] += arow[j];
    }
    for (std::ptrdiff_t j = j0; j < j1; ++j) m[j] /= n;
  }
  return m;
}

Mat subtract_row(const Mat& a, const std::vector<double>& r) {
  if (r.size() != a.cols()) throw InvalidParameter("subtract_row: length mismatch");
  Mat out(a.rows(), a.cols());
  const auto m = static_cast<std::ptrdiff_t>(a.rows());
#pragma omp parallel for schedule(static) num_threads(default_threads())
  for (std::ptrdiff_t i = 0; i < m; ++i) {
    const double* src = a.row(static_cast<std::size_t>(i)).data();
    double* dst = out.row(static_cast<std::size_t>(i)).data();
    for (std::size_t j = 0; j < r.size(); ++j) dst[j] = src[j] - r[j];
  }
  return out;
}

}  // namespace omp

Mat matmul(const Mat& a, const Mat& b, Exec exec) {
  return exec == Exec::serial ? serial::matmul(a, b) : omp::matmul(a, b);
}
Mat matmul_tn(const Mat& a, const Mat& b, Exec exec) {
  return exec == Exec::serial ? serial::matmul_tn(a, b) : omp::matmul_tn(a, b);
}
Mat matmul_nt(const Mat& a, const Mat& b, Exec exec) {
  return exec == Exec::serial ? serial::matmul_nt(a, b) : omp::matmul_nt(a, b);
}
std::vector<double> column_means(const Mat& a, Exec exec) {
  return exec == Exec::serial ? serial::column_means(a) : omp::column_means(a);
}
Mat subtract_row(const Mat& a, const std::vector<double>& r, Exec exec) {
  return exec == Exec::serial ? serial::subtract_row(a, r) : omp::subtract_row(a, r);
}

}  // namespace nyspca::kernels
