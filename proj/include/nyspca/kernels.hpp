#pragma once

// Dense product and reduction kernels.
//
// Two implementations live side by side: `serial` is the straightforward
// reference, `omp` is the OpenMP-parallel version used by default. Every
// output entry is accumulated in the same order by both (ascending over the
// contracted index, starting from +0.0), so the two agree bit-for-bit for any
// thread count. Tests rely on that.

#include <vector>

#include "nyspca/mat.hpp"

namespace nyspca::kernels {

enum class Exec { serial, parallel };

namespace serial {
Mat matmul(const Mat& a, const Mat& b);     // A B
Mat matmul_tn(const Mat& a, const Mat& b);  // Aᵀ B
Mat matmul_nt(const Mat& a, const Mat& b);  // A Bᵀ
std::vector<double> column_means(const Mat& a);
Mat subtract_row(const Mat& a, const std::vector<double>& r);
}  // namespace serial

namespace omp {
Mat matmul(const Mat& a, const Mat& b);
Mat matmul_tn(const Mat& a, const Mat& b);
Mat matmul_nt(const Mat& a, const Mat& b);
std::vector<double> column_means(const Mat& a);
Mat subtract_row(const Mat& a, const std::vector<double>& r);
}  // namespace omp

Mat matmul(const Mat& a, const Mat& b, Exec exec = Exec::parallel);
Mat matmul_tn(const Mat& a, const Mat& b, Exec exec = Exec::parallel);
Mat matmul_nt(const Mat& a, const Mat& b, Exec exec = Exec::parallel);
std::vector<double> column_means(const Mat& a, Exec exec = Exec::parallel);
/// Subtracts `r` from every row of `a`.
Mat subtract_row(const Mat& a, const std::vector<double>& r, Exec exec = Exec::parallel);

/// Thread count used by the parallel kernels. Reads NYSPCA_THREADS once;
/// falls back to the OpenMP default.
int default_threads();
void set_threads(int n);

}  // namespace nyspca::kernels
