#include "nyspca/matcore.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "nyspca/errors.hpp"
#include "nyspca/kernels.hpp"

namespace nyspca {

namespace {

using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Mat to_mat(const Eigen::MatrixXd& m, std::size_t cols) {
  Mat out(static_cast<std::size_t>(m.rows()), cols);
  for (std::size_t i = 0; i < out.rows(); ++i)
    for (std::size_t j = 0; j < cols; ++j)
      out(i, j) = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  return out;
}

// Index of the largest |entry| in column j; strict comparison keeps the
// lowest index on ties.
std::size_t dominant_index(const Mat& m, std::size_t j) {
  std::size_t best = 0;
  double best_abs = -1.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const double a = std::abs(m(i, j));
    if (a > best_abs) {
      best_abs = a;
      best = i;
    }
  }
  return best;
}

void flip_column(Mat& m, std::size_t j) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) = -m(i, j);
}

enum class SignSide { right, left };

Svd compute_svd(const Mat& a, std::optional<double> tol_factor, SignSide side) {
  if (a.empty()) throw InvalidInput("svd: empty matrix");
  if (!a.all_finite()) throw InvalidInput("svd: non-finite entry in input");
  const double tol = tol_factor.value_or(default_tol_factor(a));
  if (tol < 0.0) throw InvalidParameter("svd: tol_factor must be nonnegative");

  Eigen::Map<const RowMajorMatrix> am(a.values().data(), static_cast<Eigen::Index>(a.rows()),
                                      static_cast<Eigen::Index>(a.cols()));
  Eigen::BDCSVD<Eigen::MatrixXd> dec(Eigen::MatrixXd(am),
                                     Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = dec.singularValues();

  Svd out;
  out.tol = tol;
  const double cutoff = sv.size() > 0 ? tol * sv(0) : 0.0;
  std::size_t r = 0;
  while (r < static_cast<std::size_t>(sv.size()) && sv(static_cast<Eigen::Index>(r)) > cutoff &&
         sv(static_cast<Eigen::Index>(r)) > 0.0)
    ++r;
  out.rank = r;
  out.sigma.assign(sv.data(), sv.data() + r);
  out.u = to_mat(dec.matrixU(), r);
  out.v = to_mat(dec.matrixV(), r);

  for (std::size_t j = 0; j < r; ++j) {
    const Mat& ref = side == SignSide::right ? out.v : out.u;
    if (ref(dominant_index(ref, j), j) < 0.0) {
      flip_column(out.u, j);
      flip_column(out.v, j);
    }
  }
  return out;
}

}  // namespace

double default_tol_factor(const Mat& a) {
  return static_cast<double>(std::max(a.rows(), a.cols())) *
         std::numeric_limits<double>::epsilon();
}

Mat center_columns(const Mat& x) {
  if (x.empty()) throw InvalidInput("center_columns: empty matrix");
  return kernels::subtract_row(x, kernels::column_means(x));
}

Svd svd(const Mat& a, std::optional<double> tol_factor) {
  return compute_svd(a, tol_factor, SignSide::right);
}

Svd svd_left_signed(const Mat& a, std::optional<double> tol_factor) {
  return compute_svd(a, tol_factor, SignSide::left);
}

SymEig nnd_eigen(const Mat& a, std::optional<double> tol_factor) {
  Svd s = svd(a, tol_factor);
  return {std::move(s.sigma), std::move(s.v)};
}

std::vector<double> pinv_diag(std::span<const double> sigma, double tol) {
  std::vector<double> out(sigma.size(), 0.0);
  if (sigma.empty()) return out;
  if (tol < 0.0) throw InvalidParameter("pinv_diag: negative tolerance");
  for (double s : sigma)
    if (s < 0.0 || std::isnan(s)) throw InvalidInput("pinv_diag: negative singular value");
  const double cutoff = tol * sigma[0];
  for (std::size_t i = 0; i < sigma.size(); ++i)
    if (sigma[i] > cutoff && sigma[i] > 0.0) out[i] = 1.0 / sigma[i];
  return out;
}

Basis pca_right_from(const Svd& s, std::size_t n, std::size_t d) {
  if (d == 0 || d > s.rank)
    throw RankError("exact_pca: d = " + std::to_string(d) + " exceeds numerical rank " +
                        std::to_string(s.rank),
                    s.rank);
  Basis b;
  b.b = s.v.leading_columns(d);
  b.eigvals.resize(d);
  for (std::size_t i = 0; i < d; ++i) b.eigvals[i] = s.sigma[i] * s.sigma[i] / static_cast<double>(n);
  b.orthonormal = true;
  b.method = Method::exact;
  return b;
}

Basis pca_left_from(const Svd& s, std::size_t n, std::size_t d) {
  Basis b = pca_right_from(s, n, d);
  b.b = s.u.leading_columns(d);
  return b;
}

Basis exact_pca(const Mat& x, std::size_t d) { return pca_right_from(svd(x), x.rows(), d); }

Basis exact_pca_left(const Mat& x, std::size_t d) {
  return pca_left_from(svd(x), x.rows(), d);
}

}  // namespace nyspca
