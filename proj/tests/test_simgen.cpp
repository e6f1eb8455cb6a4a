#include <doctest.h>

#include <cmath>

#include "nyspca/errors.hpp"
#include "nyspca/simgen.hpp"
#include "support.hpp"

using namespace nyspca;

TEST_CASE("band precision edge counts") {
  for (std::size_t p : {100u, 200u})
    for (std::size_t b : {1u, 5u, 50u}) {
      const auto [omega, spec] = precision_band(p, b);
      CHECK(count_edges(omega) == b * (2 * p - 1 - b) / 2);
      CHECK(spec.b == b);
      CHECK(spec.label() == "band:" + std::to_string(b));
    }
  CHECK(count_edges(precision_band(200, 50).first) == 8725);
  CHECK_THROWS_AS(precision_band(10, 0), InvalidParameter);
  CHECK_THROWS_AS(precision_band(10, 10), InvalidParameter);
}

TEST_CASE("band structure before repair") {
  const auto [omega, spec] = precision_band(12, 2);
  for (std::size_t i = 0; i < 12; ++i)
    for (std::size_t j = 0; j < 12; ++j) {
      const std::size_t dist = i > j ? i - j : j - i;
      if (i == j) CHECK(omega(i, j) == doctest::Approx(1.0 + spec.pd_shift));
      else CHECK(omega(i, j) == (dist <= 2 ? 1.0 : 0.0));
    }
}

TEST_CASE("pd_repair guarantees the eigenvalue floor") {
  for (std::size_t b : {1u, 3u, 10u}) {
    const auto [omega, spec] = precision_band(40, b);
    const auto vals = testing::jacobi_eigen(omega).first;
    CHECK(vals.back() >= kPdFloor - 1e-10);
    if (spec.pd_shift > 0) CHECK(vals.back() == doctest::Approx(kPdFloor).epsilon(1e-8));
  }
  const Mat good = Mat::identity(5);
  const auto [same, shift] = pd_repair(good);
  CHECK(shift == 0.0);
  CHECK(same == good);
  CHECK_THROWS_AS(pd_repair(Mat::from_rows({{1, 2}, {0, 1}})), InvalidInput);
}

TEST_CASE("random precision") {
  const auto [a, sa] = precision_random(120, 0.1, 4);
  const auto [b, sb] = precision_random(120, 0.1, 4);
  const auto [c, sc] = precision_random(120, 0.1, 5);
  CHECK(a == b);
  CHECK_FALSE(a == c);
  const double expected = 0.1 * 120 * 119 / 2.0;
  CHECK(std::abs(static_cast<double>(count_edges(a)) - expected) < 4 * std::sqrt(expected));
  CHECK(testing::jacobi_eigen(a).first.back() >= kPdFloor - 1e-10);
  CHECK(sa.label() == "random:0.1");
  CHECK(count_edges(precision_random(30, 0.0, 1).first) == 0);
  CHECK(count_edges(precision_random(30, 1.0, 1).first) == 30 * 29 / 2);
  CHECK_THROWS_AS(precision_random(30, 1.5, 1), InvalidParameter);
}

TEST_CASE("sample covariance approaches the inverse precision") {
  const auto [omega, spec] = precision_band(6, 1);
  const Mat sigma = covariance_from_precision(omega);
  CHECK(testing::max_diff(testing::naive_mul(sigma, omega), Mat::identity(6)) < 1e-10);
  const std::size_t n = 40000;
  const Mat x = sample_mvn(n, omega, 9);
  Mat s = testing::naive_mul(testing::naive_t(x), x);
  for (auto& v : s.values()) v /= static_cast<double>(n);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      // se of a sample covariance entry ≈ sqrt((σ_ii σ_jj + σ_ij²)/n)
      const double se = std::sqrt((sigma(i, i) * sigma(j, j) + sigma(i, j) * sigma(i, j)) / n);
      CHECK(std::abs(s(i, j) - sigma(i, j)) < 5 * se);
    }
}

TEST_CASE("sampling is deterministic per seed and rejects indefinite input") {
  const auto [omega, spec] = precision_band(8, 2);
  CHECK(sample_mvn(10, omega, 3) == sample_mvn(10, omega, 3));
  CHECK_FALSE(sample_mvn(10, omega, 3) == sample_mvn(10, omega, 4));
  Mat bad = Mat::identity(3);
  bad(0, 0) = -1;
  CHECK_THROWS_AS(sample_mvn(5, bad, 1), DecompositionError);
  CHECK_THROWS_AS(sample_mvn(0, omega, 1), InvalidParameter);
  CHECK(min_eigenvalue(bad) == doctest::Approx(-1.0));
}
