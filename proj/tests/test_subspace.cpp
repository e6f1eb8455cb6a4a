#include <doctest.h>

#include <cmath>

#include "nyspca/errors.hpp"
#include "nyspca/matcore.hpp"
#include "nyspca/subspace.hpp"
#include "support.hpp"

using namespace nyspca;

namespace {

Basis wrap(Mat b, bool ortho = false) {
  Basis out;
  out.b = std::move(b);
  out.orthonormal = ortho;
  return out;
}

Mat random_orthogonal(std::size_t d, unsigned long seed) {
  return svd(testing::gaussian(d, d, seed)).u;
}

}  // namespace

TEST_CASE("distance between coordinate axes") {
  const Mat e1 = Mat::from_rows({{1}, {0}, {0}});
  const Mat e2 = Mat::from_rows({{0}, {1}, {0}});
  CHECK(std::abs(delta(projector(e1, 1), projector(e2, 1)) - std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(subspace_distance(e1, e2) - std::sqrt(2.0)) < 1e-12);
  CHECK(delta(projector(e1, 1), projector(e1, 1)) == 0.0);
  CHECK(subspace_distance(e1, e1) == 0.0);
}

TEST_CASE("residual form equals the explicit projector oracle") {
  for (unsigned long seed = 1; seed <= 20; ++seed) {
    const std::size_t q = 8 + seed % 7, d = 1 + seed % 4;
    const Mat b1 = testing::gaussian(q, d, seed);
    const Mat b2 = testing::gaussian(q, d, seed + 1000);
    const double oracle = testing::projector_distance(b1, b2);
    CHECK(basis_distance(wrap(b1), wrap(b2), d) == doctest::Approx(oracle).epsilon(1e-10));
    CHECK(delta(projector(b1, d), projector(b2, d)) == doctest::Approx(oracle).epsilon(1e-10));
  }
}

TEST_CASE("Δ² = 2 Σ sin² θ over principal angles") {
  const Mat q1 = orthonormal_basis(testing::gaussian(10, 3, 5), 3);
  const Mat q2 = orthonormal_basis(testing::gaussian(10, 3, 6), 3);
  const Svd s = svd(testing::naive_mul(testing::naive_t(q1), q2));
  double sum = 0;
  for (double c : s.sigma) sum += 1.0 - std::min(1.0, c * c);
  CHECK(subspace_distance(q1, q2) == doctest::Approx(std::sqrt(2.0 * sum)).epsilon(1e-10));
}

TEST_CASE("invariance under mixing and scaling of the basis") {
  for (unsigned long seed = 1; seed <= 30; ++seed) {
    const Mat b = testing::gaussian(12, 4, seed);
    const Mat o = random_orthogonal(4, seed + 50);
    const Mat bo = testing::naive_mul(b, o);
    CHECK(basis_distance(wrap(b), wrap(bo), 4) <= 1e-10);
    const std::vector<double> sc{2.0, -3.0, 1e3, 0.5};
    CHECK(basis_distance(wrap(b), wrap(scale_columns(b, sc)), 4) <= 1e-10);
  }
}

TEST_CASE("distance is symmetric, bounded and uses the leading d columns") {
  const Mat b1 = testing::gaussian(9, 5, 1);
  const Mat b2 = testing::gaussian(9, 5, 2);
  const double d12 = basis_distance(wrap(b1), wrap(b2), 3);
  CHECK(d12 == doctest::Approx(basis_distance(wrap(b2), wrap(b1), 3)));
  CHECK(d12 <= std::sqrt(6.0) + 1e-12);
  CHECK(d12 == doctest::Approx(testing::projector_distance(b1.leading_columns(3), b2.leading_columns(3))));
}

TEST_CASE("projector properties") {
  const Projector p = projector(testing::gaussian(7, 3, 4), 3);
  const Mat pp = testing::naive_mul(p.p, p.p);
  CHECK(testing::max_diff(pp, p.p) < 1e-12);
  CHECK(asymmetry(p.p) < 1e-12);
  CHECK(trace(p.p) == doctest::Approx(3.0));
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(projector(testing::gaussian(5, 2, 1), 3), InvalidParameter);
  Mat dep = testing::gaussian(6, 2, 1);
  for (std::size_t i = 0; i < 6; ++i) dep(i, 1) = 2.0 * dep(i, 0);
  CHECK_THROWS_AS(orthonormal_basis(dep, 2), RankError);
  CHECK_THROWS_AS(delta(projector(testing::gaussian(5, 1, 1), 1), projector(testing::gaussian(6, 1, 1), 1)),
                  InvalidParameter);
  const Basis e = wrap(Mat::from_rows({{1}, {0}}), true);
  CHECK_THROWS_AS(relative_error(e, e, e, 1), DegenerateReference);
  const Basis f = wrap(Mat::from_rows({{1}, {1}}));
  const Basis g = wrap(Mat::from_rows({{0}, {1}}));
  CHECK(relative_error(g, f, e, 1) == doctest::Approx(std::sqrt(2.0) / 1.0));
}
