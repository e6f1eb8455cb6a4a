#pragma once

#include <cstddef>

#include "nyspca/basis.hpp"
#include "nyspca/mat.hpp"

namespace nyspca {

/// Orthogonal projector onto span of the leading d columns of some basis.
struct Projector {
  Mat p;  // q x q
  std::size_t d = 0;
};

/// Orthonormal basis for span(B_d) from the left singular vectors of B_d.
/// Throws RankError when B_d is numerically rank deficient.
Mat orthonormal_basis(const Mat& b, std::size_t d);

/// B_d (B_dᵀB_d)† B_dᵀ, formed as Q Qᵀ with Q = orthonormal_basis(B, d).
Projector projector(const Mat& b, std::size_t d);

/// ‖P1 - P2‖_F.
double delta(const Projector& p1, const Projector& p2);

/// Same distance without forming q x q projectors:
///   Δ² = ‖(I - Q2Q2ᵀ)Q1‖_F² + ‖(I - Q1Q1ᵀ)Q2‖_F²
/// for orthonormal Q1 (q x d1), Q2 (q x d2). Residual form, so it stays
/// accurate when the subspaces nearly coincide.
double subspace_distance(const Mat& q1, const Mat& q2);

/// Δ between span(B1_d) and span(B2_d).
double basis_distance(const Basis& b1, const Basis& b2, std::size_t d);

/// Δ(approx_d, exact_d) / Δ(reference_d, exact_d).
double relative_error(const Basis& approx, const Basis& reference_cs, const Basis& exact,
                      std::size_t d);

}  // namespace nyspca
