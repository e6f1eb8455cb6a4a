#pragma once

#include <optional>
#include <span>
#include <vector>

#include "nyspca/basis.hpp"
#include "nyspca/mat.hpp"

namespace nyspca {

/// Reduced SVD A = U diag(sigma) Vᵀ truncated to the numerical rank.
struct Svd {
  Mat u;                       // m x r
  std::vector<double> sigma;   // nonincreasing, length r
  Mat v;                       // k x r
  std::size_t rank = 0;
  double tol = 0.0;            // relative truncation factor that was applied
};

/// max(rows, cols) * machine epsilon.
double default_tol_factor(const Mat& a);

/// X - 1 (column means)ᵀ.
Mat center_columns(const Mat& x);

/// Singular values at or below tol_factor * sigma[0] are dropped. Each right
/// singular vector is signed so its largest-magnitude entry (lowest index on
/// ties) is nonnegative; the left vector follows. Repeated singular values
/// give implementation-defined individual vectors; only their span is stable.
Svd svd(const Mat& a, std::optional<double> tol_factor = std::nullopt);

/// Same decomposition, with the sign convention applied to the left vectors
/// instead (used when U plays the role of eigenvectors of A Aᵀ).
Svd svd_left_signed(const Mat& a, std::optional<double> tol_factor = std::nullopt);

/// Eigenpairs of a symmetric nonnegative-definite matrix through its SVD.
struct SymEig {
  std::vector<double> values;  // nonincreasing
  Mat vectors;                 // columns
};
SymEig nnd_eigen(const Mat& a, std::optional<double> tol_factor = std::nullopt);

/// 1/sigma_i where sigma_i > tol * sigma_0, else 0.
std::vector<double> pinv_diag(std::span<const double> sigma, double tol);

/// Leading d right singular vectors of X with eigenvalues sigma_i^2 / n of
/// n⁻¹XᵀX. This is the oracle every approximation is measured against.
Basis exact_pca(const Mat& x, std::size_t d);
/// Leading d left singular vectors of X (eigenvectors of XXᵀ).
Basis exact_pca_left(const Mat& x, std::size_t d);
/// Both oracles from an already computed SVD of X.
Basis pca_right_from(const Svd& s, std::size_t n, std::size_t d);
Basis pca_left_from(const Svd& s, std::size_t n, std::size_t d);

}  // namespace nyspca
