#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "nyspca/mat.hpp"

namespace nyspca {

/// Smallest eigenvalue guaranteed after pd_repair.
inline constexpr double kPdFloor = 0.05;

struct PrecisionSpec {
  enum class Model { random, band };
  Model model = Model::random;
  double x = 0.0;     // edge probability (random)
  std::size_t b = 0;  // bandwidth (band)
  std::size_t p = 0;
  std::uint64_t seed = 0;
  double pd_shift = 0.0;

  /// "random:<x>" or "band:<b>".
  std::string label() const;
};

/// Unit diagonal, and for each i < j an edge (entry 1, mirrored) with
/// probability x, then pd_repair.
std::pair<Mat, PrecisionSpec> precision_random(std::size_t p, double x, std::uint64_t seed);

/// Ones on |i - j| <= b, zero elsewhere, then pd_repair.
std::pair<Mat, PrecisionSpec> precision_band(std::size_t p, std::size_t b);

/// Returns (Ω + s I, s) with s = max(0, kPdFloor - λ_min(Ω)).
std::pair<Mat, double> pd_repair(const Mat& omega);

/// n rows i.i.d. N(0, Ω⁻¹). With Ω = L Lᵀ (Cholesky) each row x solves
/// Lᵀ x = z, z standard normal drawn row-major from stream `gaussian` of
/// the seed, so Cov(x) = L⁻ᵀL⁻¹ = Ω⁻¹.
Mat sample_mvn(std::size_t n, const Mat& omega, std::uint64_t seed);

/// Ω⁻¹ through the Cholesky factor.
Mat covariance_from_precision(const Mat& omega);

/// Number of nonzero strictly-upper-triangular entries (graph edges).
std::size_t count_edges(const Mat& omega);

/// Smallest eigenvalue of a symmetric matrix.
double min_eigenvalue(const Mat& a);

}  // namespace nyspca
