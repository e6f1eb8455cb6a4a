#pragma once

// Computable upper bounds on Δ between the exact leading-d right singular
// subspace and its Nyström / column-sampling approximations.
//
// Index conventions: d is the usual 1-based subspace dimension, so
// spectral_gap(top, bottom, d) = top[d-1] - bottom[d]. The summations run
// over the permuted column order (selected columns first); S_tail includes
// its diagonal j = k terms.

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "nyspca/mat.hpp"
#include "nyspca/sketch.hpp"

namespace nyspca {

enum class BoundKind { nystrom_full, cs_full, nystrom_cor, cs_cor };

struct BoundReport {
  BoundKind kind = BoundKind::nystrom_full;
  double gap = 0.0;
  double term1 = 0.0;
  double term2 = 0.0;
  double total = 0.0;
  std::size_t d = 0;
  std::size_t l = 0;
  std::optional<double> coherence;
  /// Corollary only: the radicand d - trace((VᵀV)⁻¹) was negative and clamped.
  bool clamped = false;
};

/// λ_d(top) - λ_{d+1}(bottom); λ_{d+1}(bottom) is 0 when bottom has ≤ d entries.
double spectral_gap(std::span<const double> top, std::span<const double> bottom, std::size_t d);

struct CrossTerms {
  double mixed = 0.0;  // Σ_{j∉sel} Σ_{k∈sel} (x_jᵀx_k)²
  double tail = 0.0;   // Σ_{j∉sel} Σ_{k∉sel} (x_jᵀx_k)²
};
CrossTerms cross_term_sums(const Mat& x, const Selection& sel);

/// Eigenvalues of S = n⁻¹XᵀX (length p, zero padded past rank).
std::vector<double> covariance_eigenvalues(const Mat& x);

/// Nyström bound with gap ε = gap(S, S11).
BoundReport nystrom_bound(const Mat& x, const Selection& sel, std::size_t d);
/// Column-sampling bound with gap δ = gap(S, L(S)).
BoundReport cs_bound(const Mat& x, const Selection& sel, std::size_t d);

/// max x_jᵀx_k over j ≠ k, r+1 ≤ k ≤ p (1-based as written). Internally k
/// ranges over the 0-based columns [r, p).
double coherence(const Mat& x, std::size_t r);
/// coherence of X with columns reordered as sel.permutation(), r = l.
double coherence_for_selection(const Mat& x, const Selection& sel);

/// (Nyström corollary report, column-sampling corollary report).
/// vnys_d are the leading d Nyström basis vectors [V(S11); Ω]_d without the
/// √(l/p) factor.
std::pair<BoundReport, BoundReport> corollary_bounds(double c, std::size_t p, std::size_t l,
                                                     std::size_t n, double delta,
                                                     const Mat& vnys_d, std::size_t d);

/// √(p² - l²) - √((p - l)p), the corollary term-1 gap at nδ = 1.
double bound_difference(std::size_t p, std::size_t l);

/// Unscaled Nyström basis [V(S11); Ω(S)] in original row order, i.e.
/// v_nys_stable(...).b / √(l/p).
Mat nystrom_basis_unscaled(const Mat& x, const Selection& sel);

}  // namespace nyspca
