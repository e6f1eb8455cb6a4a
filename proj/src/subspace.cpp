#include "nyspca/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nyspca/errors.hpp"
#include "nyspca/kernels.hpp"
#include "nyspca/matcore.hpp"

namespace nyspca {

Mat orthonormal_basis(const Mat& b, std::size_t d) {
  if (d == 0 || d > b.cols())
    throw InvalidParameter("projector: d = " + std::to_string(d) + " but basis has " +
                           std::to_string(b.cols()) + " columns");
  const Svd s = svd(b.leading_columns(d));
  if (s.rank < d)
    throw RankError("projector: leading " + std::to_string(d) + " columns have numerical rank " +
                        std::to_string(s.rank),
                    s.rank);
  return s.u;
}

Projector projector(const Mat& b, std::size_t d) {
  const Mat q = orthonormal_basis(b, d);
  return {kernels::matmul_nt(q, q), d};
}

double delta(const Projector& p1, const Projector& p2) {
  if (p1.p.rows() != p2.p.rows() || p1.p.cols() != p2.p.cols())
    throw InvalidParameter("delta: projectors act on different ambient dimensions");
  return frobenius_norm(p1.p - p2.p);
}

namespace {
// ‖Q1 - Q2 (Q2ᵀ Q1)‖_F²
double residual_sq(const Mat& q1, const Mat& q2) {
  const Mat coeff = kernels::matmul_tn(q2, q1);
  const Mat r = q1 - kernels::matmul(q2, coeff);
  const double f = frobenius_norm(r);
  return f * f;
}
}  // namespace

double subspace_distance(const Mat& q1, const Mat& q2) {
  if (q1.rows() != q2.rows())
    throw InvalidParameter("subspace_distance: ambient dimensions differ (" +
                           std::to_string(q1.rows()) + " vs " + std::to_string(q2.rows()) + ")");
  return std::sqrt(residual_sq(q1, q2) + residual_sq(q2, q1));
}

namespace {
Mat leading_orthonormal(const Basis& b, std::size_t d) {
  if (b.orthonormal) {
    if (d == 0 || d > b.dim())
      throw InvalidParameter("basis has " + std::to_string(b.dim()) + " columns, d = " +
                             std::to_string(d));
    return b.b.leading_columns(d);
  }
  return orthonormal_basis(b.b, d);
}
}  // namespace

double basis_distance(const Basis& b1, const Basis& b2, std::size_t d) {
  return subspace_distance(leading_orthonormal(b1, d), leading_orthonormal(b2, d));
}

double relative_error(const Basis& approx, const Basis& reference_cs, const Basis& exact,
                      std::size_t d) {
  const Mat qe = leading_orthonormal(exact, d);
  const double denom = subspace_distance(leading_orthonormal(reference_cs, d), qe);
  if (denom < 1e-12)
    throw DegenerateReference("relative_error: reference distance " + std::to_string(denom) +
                              " is below 1e-12 (column-sampling approximation is exact)");
  return subspace_distance(leading_orthonormal(approx, d), qe) / denom;
}

}  // namespace nyspca
