#include "nyspca/bounds.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "nyspca/errors.hpp"
#include "nyspca/kernels.hpp"
#include "nyspca/matcore.hpp"

namespace nyspca {

namespace {

double sq_frobenius(const Mat& m) {
  const double f = frobenius_norm(m);
  return f * f;
}

void check_columns(const Mat& x, const Selection& sel, const char* who) {
  if (sel.axis != Axis::columns || sel.q != x.cols())
    throw InvalidParameter(std::string(who) + ": need a column selection over " +
                           std::to_string(x.cols()) + " columns");
}

void check_d(std::size_t d, std::size_t p, const char* who) {
  if (d == 0 || d > p)
    throw InvalidParameter(std::string(who) + ": d = " + std::to_string(d) + " outside [1, " +
                           std::to_string(p) + "]");
}

// trace(Gᵀ(I + G Gᵀ)⁻¹G) for G = Ω_d, evaluated on the d x d side as
// trace(M (I + M)⁻¹) with M = Ω_dᵀΩ_d, by a Cholesky solve.
double omega_trace(const Mat& omega_d) {
  const Mat m = kernels::matmul_tn(omega_d, omega_d);
  const auto k = static_cast<Eigen::Index>(m.rows());
  if (k == 0) return 0.0;
  Eigen::MatrixXd mm(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) mm(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  const Eigen::MatrixXd lhs = Eigen::MatrixXd::Identity(k, k) + mm;
  const Eigen::MatrixXd y = lhs.llt().solve(mm);
  return std::max(0.0, y.trace());
}

}  // namespace

double spectral_gap(std::span<const double> top, std::span<const double> bottom, std::size_t d) {
  if (d == 0 || d > top.size())
    throw InvalidParameter("spectral_gap: d = " + std::to_string(d) + " but only " +
                           std::to_string(top.size()) + " eigenvalues given");
  const double next = bottom.size() > d ? bottom[d] : 0.0;
  return top[d - 1] - next;
}

CrossTerms cross_term_sums(const Mat& x, const Selection& sel) {
  check_columns(x, sel, "cross_term_sums");
  const auto rest = sel.complement();
  if (rest.empty()) return {};
  const Mat x1 = take_columns(x, sel.indices);
  const Mat x2 = take_columns(x, rest);
  return {sq_frobenius(kernels::matmul_tn(x2, x1)), sq_frobenius(kernels::matmul_tn(x2, x2))};
}

std::vector<double> covariance_eigenvalues(const Mat& x) {
  const Svd s = svd(x);
  std::vector<double> lam(x.cols(), 0.0);
  for (std::size_t i = 0; i < s.rank; ++i)
    lam[i] = s.sigma[i] * s.sigma[i] / static_cast<double>(x.rows());
  return lam;
}

BoundReport nystrom_bound(const Mat& x, const Selection& sel, std::size_t d) {
  check_columns(x, sel, "nystrom_bound");
  check_d(d, x.cols(), "nystrom_bound");
  const double n = static_cast<double>(x.rows());
  const auto lam_s = covariance_eigenvalues(x);
  const Mat x1 = take_columns(x, sel.indices);
  const Svd s1 = svd(x1);
  std::vector<double> lam_11(s1.rank);
  for (std::size_t i = 0; i < s1.rank; ++i) lam_11[i] = s1.sigma[i] * s1.sigma[i] / n;

  BoundReport r;
  r.kind = BoundKind::nystrom_full;
  r.d = d;
  r.l = sel.l();
  r.gap = spectral_gap(lam_s, lam_11, d);
  if (!(r.gap > 0.0))
    throw GapError("nystrom_bound: gap(S, S11) = " + std::to_string(r.gap) + " is not positive",
                   r.gap);

  const CrossTerms ct = cross_term_sums(x, sel);
  r.term1 = std::sqrt(2.0) / (n * r.gap) * std::sqrt(2.0 * ct.mixed + ct.tail);

  const auto rest = sel.complement();
  if (!rest.empty() && s1.rank > 0) {
    // Ω = S21 V(S11) Λ(S11)† = x2ᵀ U(x1) Λ(x1)†
    const Mat x2 = take_columns(x, rest);
    std::vector<double> inv(s1.rank);
    for (std::size_t i = 0; i < s1.rank; ++i) inv[i] = 1.0 / s1.sigma[i];
    const Mat omega = kernels::matmul_tn(x2, scale_columns(s1.u, inv));
    r.term2 = std::sqrt(2.0) * std::sqrt(omega_trace(omega.leading_columns(std::min(d, s1.rank))));
  }
  r.total = r.term1 + r.term2;
  return r;
}

BoundReport cs_bound(const Mat& x, const Selection& sel, std::size_t d) {
  check_columns(x, sel, "cs_bound");
  check_d(d, x.cols(), "cs_bound");
  const double n = static_cast<double>(x.rows());
  const auto lam_s = covariance_eigenvalues(x);
  const Mat x1 = take_columns(x, sel.indices);
  const Svd sl = svd((1.0 / n) * kernels::matmul_tn(x, x1));

  BoundReport r;
  r.kind = BoundKind::cs_full;
  r.d = d;
  r.l = sel.l();
  r.gap = spectral_gap(lam_s, sl.sigma, d);
  if (!(r.gap > 0.0))
    throw GapError("cs_bound: gap(S, L(S)) = " + std::to_string(r.gap) + " is not positive", r.gap);
  const CrossTerms ct = cross_term_sums(x, sel);
  r.term1 = std::sqrt(ct.mixed + ct.tail) / (r.gap * n);
  r.term2 = 0.0;
  r.total = r.term1;
  return r;
}

double coherence(const Mat& x, std::size_t r) {
  const std::size_t p = x.cols();
  if (r >= p)
    throw InvalidParameter("coherence: r = " + std::to_string(r) + " must be below p = " +
                           std::to_string(p));
  if (p < 2) throw InvalidParameter("coherence: index set is empty for p < 2");
  std::vector<std::size_t> tail(p - r);
  for (std::size_t k = r; k < p; ++k) tail[k - r] = k;
  const Mat g = kernels::matmul_tn(x, take_columns(x, tail));  // p x (p - r)
  double c = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < p; ++j)
    for (std::size_t k = r; k < p; ++k)
      if (j != k) c = std::max(c, g(j, k - r));
  return c;
}

double coherence_for_selection(const Mat& x, const Selection& sel) {
  check_columns(x, sel, "coherence_for_selection");
  const auto perm = sel.permutation();
  return coherence(take_columns(x, perm), sel.l());
}

std::pair<BoundReport, BoundReport> corollary_bounds(double c, std::size_t p, std::size_t l,
                                                     std::size_t n, double delta,
                                                     const Mat& vnys_d, std::size_t d) {
  if (!(delta > 0.0))
    throw GapError("corollary_bounds: delta = " + std::to_string(delta) + " is not positive", delta);
  if (l == 0 || l > p) throw InvalidParameter("corollary_bounds: need 0 < l <= p");
  if (vnys_d.cols() != d) throw InvalidParameter("corollary_bounds: vnys_d must have d columns");
  // any upper bound on the inner products is a valid coherence, so 0 may stand in for a negative max
  const double cc = std::max(c, 0.0);
  const double nd = static_cast<double>(n) * delta;
  const double pd = static_cast<double>(p), ld = static_cast<double>(l);

  BoundReport nys;
  nys.kind = BoundKind::nystrom_cor;
  nys.gap = delta;
  nys.d = d;
  nys.l = l;
  nys.coherence = c;
  nys.term1 = cc * std::sqrt((pd - ld) * (pd + ld)) / nd;
  const Svd s = svd(vnys_d);
  if (s.rank < d)
    throw RankError("corollary_bounds: Nyström basis has numerical rank " + std::to_string(s.rank),
                    s.rank);
  double inv_trace = 0.0;
  for (double sv : s.sigma) inv_trace += 1.0 / (sv * sv);
  const double radicand = static_cast<double>(d) - inv_trace;
  nys.clamped = radicand < 0.0;
  nys.term2 = std::sqrt(std::max(0.0, radicand));
  nys.total = nys.term1 + nys.term2;

  BoundReport cs;
  cs.kind = BoundKind::cs_cor;
  cs.gap = delta;
  cs.d = d;
  cs.l = l;
  cs.coherence = c;
  cs.term1 = cc * std::sqrt((pd - ld) * pd) / nd;
  cs.total = cs.term1;
  return {nys, cs};
}

double bound_difference(std::size_t p, std::size_t l) {
  if (l == 0 || l > p)
    throw InvalidParameter("bound_difference: need 0 < l <= p, got l = " + std::to_string(l) +
                           ", p = " + std::to_string(p));
  if (l == p) return 0.0;
  const double pd = static_cast<double>(p), ld = static_cast<double>(l);
  // a - b = (a² - b²) / (a + b) with a² - b² = l (p - l); no cancellation for p >> l
  return ld * (pd - ld) / (std::sqrt((pd - ld) * (pd + ld)) + std::sqrt(pd * (pd - ld)));
}

Mat nystrom_basis_unscaled(const Mat& x, const Selection& sel) {
  check_columns(x, sel, "nystrom_basis_unscaled");
  const Svd s = svd(take_columns(x, sel.indices));
  if (s.rank == 0) throw DegenerateSketch("nystrom_basis_unscaled: sampled block is numerically zero");
  std::vector<double> inv(s.rank);
  for (std::size_t i = 0; i < s.rank; ++i) inv[i] = 1.0 / s.sigma[i];
  return kernels::matmul_tn(x, scale_columns(s.u, inv));
}

}  // namespace nyspca
