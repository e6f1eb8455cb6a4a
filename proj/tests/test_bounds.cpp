#include <doctest.h>

#include <cmath>
#include <limits>

#include "nyspca/bounds.hpp"
#include "nyspca/errors.hpp"
#include "nyspca/matcore.hpp"
#include "nyspca/specapprox.hpp"
#include "nyspca/subspace.hpp"
#include "support.hpp"

using namespace nyspca;
using testing::naive_mul;
using testing::naive_t;

namespace {

double dot_cols(const Mat& x, std::size_t j, std::size_t k) {
  double s = 0;
  for (std::size_t i = 0; i < x.rows(); ++i) s += x(i, j) * x(i, k);
  return s;
}

std::vector<double> sym_eigs(const Mat& a) { return testing::jacobi_eigen(a).first; }

Mat covariance(const Mat& x) {
  Mat s = naive_mul(naive_t(x), x);
  for (auto& v : s.values()) v /= static_cast<double>(x.rows());
  return s;
}

// Nyström bound total from first principles: explicit Ω and a (p-l) x (p-l) inverse.
double nystrom_oracle(const Mat& x, const Selection& sel, std::size_t d, double* gap_out) {
  const double n = static_cast<double>(x.rows());
  const Mat s = covariance(x);
  const auto rest = sel.complement();
  const Mat s11 = take_block(s, sel.indices, sel.indices);
  const Mat s21 = take_block(s, rest, sel.indices);
  const auto [l11, v11] = testing::jacobi_eigen(s11);
  const auto ls = sym_eigs(s);
  const double eps = ls[d - 1] - (d < l11.size() ? l11[d] : 0.0);
  *gap_out = eps;
  double mixed = 0, tail = 0;
  for (std::size_t j : rest) {
    for (std::size_t k : sel.indices) mixed += std::pow(dot_cols(x, j, k), 2);
    for (std::size_t k : rest) tail += std::pow(dot_cols(x, j, k), 2);
  }
  const double t1 = std::sqrt(2.0) / (n * eps) * std::sqrt(2 * mixed + tail);
  // Ω_d = S21 V(S11)_d Λ(S11)_d⁻¹
  Mat om(rest.size(), d);
  const Mat s21v = naive_mul(s21, v11);
  for (std::size_t i = 0; i < rest.size(); ++i)
    for (std::size_t k = 0; k < d; ++k) om(i, k) = s21v(i, k) / l11[k];
  Mat inner = naive_mul(om, naive_t(om));
  for (std::size_t i = 0; i < inner.rows(); ++i) inner(i, i) += 1.0;
  const double tr = trace(naive_mul(naive_mul(naive_t(om), testing::inverse(inner)), om));
  return t1 + std::sqrt(2.0) * std::sqrt(tr);
}

}  // namespace

TEST_CASE("spectral_gap indexing") {
  const std::vector<double> top{5, 4, 3}, bottom{4.5, 2, 1};
  CHECK(spectral_gap(top, bottom, 1) == 3.0);
  CHECK(spectral_gap(top, bottom, 2) == 3.0);
  CHECK(spectral_gap(top, bottom, 3) == 3.0);
  CHECK(spectral_gap(top, std::vector<double>{1.0}, 1) == 5.0);
  CHECK_THROWS_AS(spectral_gap(top, bottom, 0), InvalidParameter);
  CHECK_THROWS_AS(spectral_gap(top, bottom, 4), InvalidParameter);
}

TEST_CASE("cross-term sums equal brute-force double loops") {
  const Mat x = testing::gaussian(15, 12, 3);
  const Selection sel = sample_uniform(12, 5, 1);
  double mixed = 0, tail = 0;
  for (std::size_t j : sel.complement()) {
    for (std::size_t k : sel.indices) mixed += std::pow(dot_cols(x, j, k), 2);
    for (std::size_t k : sel.complement()) tail += std::pow(dot_cols(x, j, k), 2);
  }
  const CrossTerms ct = cross_term_sums(x, sel);
  CHECK(ct.mixed == doctest::Approx(mixed).epsilon(1e-12));
  CHECK(ct.tail == doctest::Approx(tail).epsilon(1e-12));
  const CrossTerms none = cross_term_sums(x, sample_uniform(12, 12, 1));
  CHECK(none.mixed == 0.0);
  CHECK(none.tail == 0.0);
}

TEST_CASE("Nyström bound matches an explicit-Ω oracle") {
  for (unsigned long seed = 1; seed <= 8; ++seed) {
    const Mat x = testing::centered(testing::gaussian(40, 16, seed));
    const Selection sel = sample_uniform(16, 8, seed);
    const std::size_t d = 1 + seed % 3;
    double gap = 0;
    const double oracle = nystrom_oracle(x, sel, d, &gap);
    if (gap <= 0) continue;
    const BoundReport r = nystrom_bound(x, sel, d);
    CHECK(r.gap == doctest::Approx(gap).epsilon(1e-9));
    CHECK(r.total == doctest::Approx(oracle).epsilon(1e-8));
    CHECK(r.total == doctest::Approx(r.term1 + r.term2));
  }
}

TEST_CASE("CS bound formula") {
  const Mat x = testing::centered(testing::gaussian(30, 14, 4));
  const Selection sel = sample_uniform(14, 7, 2);
  const std::size_t d = 2;
  Mat ls = naive_mul(naive_t(x), take_columns(x, sel.indices));
  for (auto& v : ls.values()) v /= 30.0;
  const auto sv2 = sym_eigs(naive_mul(naive_t(ls), ls));
  const double delta = sym_eigs(covariance(x))[d - 1] - std::sqrt(std::max(0.0, sv2[d]));
  const CrossTerms ct = cross_term_sums(x, sel);
  const BoundReport r = cs_bound(x, sel, d);
  CHECK(r.gap == doctest::Approx(delta).epsilon(1e-9));
  CHECK(r.total == doctest::Approx(std::sqrt(ct.mixed + ct.tail) / (delta * 30.0)).epsilon(1e-9));
  CHECK(r.term2 == 0.0);
}

TEST_CASE("bounds dominate the measured distance on small instances") {
  int checked = 0;
  for (unsigned long seed = 100; seed < 130; ++seed) {
    const Mat x = testing::centered(testing::gaussian(60, 40, seed));
    const Selection sel = sample_uniform(40, 20, seed);
    for (std::size_t d : {2u, 5u}) {
      const Basis ex = exact_pca(x, d);
      try {
        const BoundReport nb = nystrom_bound(x, sel, d);
        CHECK(basis_distance(v_nys(x, sel), ex, d) <= nb.total + 1e-8);
        ++checked;
      } catch (const GapError&) {
      }
      try {
        const BoundReport cb = cs_bound(x, sel, d);
        CHECK(basis_distance(v_cs(x, sel), ex, d) <= cb.total + 1e-8);
        ++checked;
      } catch (const GapError&) {
      }
    }
  }
  CHECK(checked > 60);
}

TEST_CASE("nonpositive gap raises GapError carrying the gap") {
  // S = I: every gap is exactly zero
  const Mat x = 2.0 * Mat::identity(4);
  const Selection sel = make_selection({0, 1}, 4);
  for (int which = 0; which < 2; ++which) {
    try {
      which ? (void)cs_bound(x, sel, 1) : (void)nystrom_bound(x, sel, 1);
      FAIL("expected GapError");
    } catch (const GapError& e) {
      CHECK(e.gap() == doctest::Approx(0.0));
    }
  }
}

TEST_CASE("coherence equals a brute-force maximum") {
  const Mat x = testing::gaussian(10, 8, 6);
  for (std::size_t r : {0u, 3u, 7u}) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < 8; ++j)
      for (std::size_t k = r; k < 8; ++k)
        if (j != k) best = std::max(best, dot_cols(x, j, k));
    CHECK(coherence(x, r) == doctest::Approx(best).epsilon(1e-12));
  }
  CHECK_THROWS_AS(coherence(x, 8), InvalidParameter);
  const Selection sel = make_selection({5, 2}, 8);
  const auto perm = sel.permutation();
  CHECK(coherence_for_selection(x, sel) == doctest::Approx(coherence(take_columns(x, perm), 2)));
}

TEST_CASE("bound_difference") {
  CHECK(bound_difference(100, 100) == 0.0);
  for (auto [p, l] : {std::pair<std::size_t, std::size_t>{100, 10}, {50, 49}, {7, 1}}) {
    const double pd = static_cast<double>(p), ld = static_cast<double>(l);
    CHECK(bound_difference(p, l) == doctest::Approx(std::sqrt(pd * pd - ld * ld) - std::sqrt((pd - ld) * pd)).epsilon(1e-12));
  }
  CHECK(std::abs(bound_difference(1000000, 10) - 5.0) < 1e-3);
  CHECK(bound_difference(1000000000, 10) == doctest::Approx(5.0).epsilon(1e-7));
  CHECK_THROWS_AS(bound_difference(10, 11), InvalidParameter);
}

TEST_CASE("corollary terms and the link to the full bound") {
  const Mat x = testing::centered(testing::gaussian(50, 20, 8));
  const Selection sel = sample_uniform(20, 10, 3);
  const std::size_t d = 3;
  const Mat v = nystrom_basis_unscaled(x, sel);
  // [V(S11); Ω] in original order: selected rows are orthonormal
  CHECK(testing::orthonormality_error(take_rows(v, sel.indices)) < 1e-10);
  CHECK(testing::max_diff(std::sqrt(10.0 / 20.0) * v, v_nys_stable(x, sel).b) < 1e-12);

  const double c = coherence_for_selection(x, sel);
  const double delta = 0.7;
  const auto [nys, cs] = corollary_bounds(c, 20, 10, 50, delta, v.leading_columns(d), d);
  CHECK(nys.term1 == doctest::Approx(std::max(c, 0.0) * std::sqrt(400.0 - 100.0) / (50 * delta)));
  CHECK(cs.term1 == doctest::Approx(std::max(c, 0.0) * std::sqrt(10.0 * 20.0) / (50 * delta)));
  CHECK(nys.term1 - cs.term1 ==
        doctest::Approx(std::max(c, 0.0) * bound_difference(20, 10) / (50 * delta)).epsilon(1e-9));
  CHECK_FALSE(nys.clamped);
  try {
    const BoundReport full = nystrom_bound(x, sel, d);
    CHECK(nys.term2 * nys.term2 == doctest::Approx(full.term2 * full.term2 / 2.0).epsilon(1e-8));
  } catch (const GapError&) {
  }
  // scaled vectors make the radicand negative; it is clamped and flagged
  const auto scaled = corollary_bounds(c, 20, 10, 50, delta, v_nys_stable(x, sel).b.leading_columns(d), d);
  CHECK(scaled.first.clamped);
  CHECK(scaled.first.term2 == 0.0);
  CHECK_THROWS_AS(corollary_bounds(c, 20, 10, 50, 0.0, v.leading_columns(d), d), GapError);
}
