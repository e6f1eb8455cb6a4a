#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <set>

#include "nyspca/errors.hpp"
#include "nyspca/io.hpp"
#include "nyspca/rng.hpp"
#include "nyspca/sketch.hpp"
#include "support.hpp"

using namespace nyspca;

TEST_CASE("CounterRng is reproducible and stream separated") {
  CounterRng a(42, 0), b(42, 0), c(42, 1), d(43, 0);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    CHECK(x != c.next_u64());
    CHECK(x != d.next_u64());
  }
  CHECK(a.counter() == 100);
}

TEST_CASE("CounterRng follows its documented formula") {
  const std::uint64_t seed = 7, stream = 3;
  const std::uint64_t key = splitmix64_mix(seed ^ (stream * 0xD1B54A32D192ED03ULL));
  CounterRng r(seed, stream);
  for (std::uint64_t i = 0; i < 5; ++i) CHECK(r.next_u64() == splitmix64_mix(key + (i + 1) * 0x9E3779B97F4A7C15ULL));
}

TEST_CASE("uniform and normal draws have the right moments") {
  CounterRng r(1, 0);
  const int n = 200000;
  double su = 0, sn = 0, sn2 = 0, sn4 = 0;
  for (int i = 0; i < n; ++i) {
    const double u = r.next_uniform();
    CHECK_UNARY(u >= 0.0);
    CHECK_UNARY(u < 1.0);
    su += u;
  }
  for (int i = 0; i < n; ++i) {
    const double z = r.next_normal();
    sn += z;
    sn2 += z * z;
    sn4 += z * z * z * z;
  }
  CHECK(su / n == doctest::Approx(0.5).epsilon(0.01));
  CHECK(std::abs(sn / n) < 0.01);
  CHECK(sn2 / n == doctest::Approx(1.0).epsilon(0.02));
  CHECK(sn4 / n == doctest::Approx(3.0).epsilon(0.05));
}

TEST_CASE("next_below is in range and roughly uniform") {
  CounterRng r(5);
  std::vector<int> counts(7, 0);
  for (int i = 0; i < 70000; ++i) {
    const auto v = r.next_below(7);
    REQUIRE(v < 7);
    ++counts[v];
  }
  for (int c : counts) CHECK(std::abs(c - 10000) < 500);
}

TEST_CASE("sample_uniform draws distinct in-range indices deterministically") {
  for (std::size_t l : {1u, 5u, 20u, 60u}) {
    const Selection s = sample_uniform(60, l, 99);
    CHECK(s.l() == l);
    std::set<std::size_t> u(s.indices.begin(), s.indices.end());
    CHECK(u.size() == l);
    CHECK(*u.rbegin() < 60);
    CHECK(s == sample_uniform(60, l, 99));
    const auto rest = s.complement();
    CHECK(rest.size() == 60 - l);
    CHECK(std::is_sorted(rest.begin(), rest.end()));
    auto perm = s.permutation();
    std::sort(perm.begin(), perm.end());
    for (std::size_t i = 0; i < 60; ++i) CHECK(perm[i] == i);
  }
  CHECK(sample_uniform(60, 10, 1).indices != sample_uniform(60, 10, 2).indices);
  CHECK_THROWS_AS(sample_uniform(10, 0, 1), InvalidParameter);
  CHECK_THROWS_AS(sample_uniform(10, 11, 1), InvalidParameter);
}

TEST_CASE("sample_uniform is uniform over indices") {
  std::vector<int> hits(20, 0);
  for (std::uint64_t s = 0; s < 4000; ++s)
    for (auto i : sample_uniform(20, 5, s).indices) ++hits[i];
  // each index expected 1000 times
  for (int h : hits) CHECK(std::abs(h - 1000) < 150);
}

TEST_CASE("make_selection validates") {
  CHECK_NOTHROW(make_selection({3, 1}, 5));
  CHECK_THROWS_AS(make_selection({3, 3}, 5), InvalidParameter);
  CHECK_THROWS_AS(make_selection({5}, 5), InvalidParameter);
  CHECK_THROWS_AS(make_selection({}, 5), InvalidParameter);
}

TEST_CASE("extract_blocks follows the selection order") {
  const Mat x = testing::gaussian(10, 6, 3);
  const Mat a = testing::naive_mul(testing::naive_t(x), x);
  const Selection s = make_selection({4, 1}, 6);
  const Blocks b = extract_blocks(a, s);
  CHECK(b.a11(0, 0) == a(4, 4));
  CHECK(b.a11(0, 1) == a(4, 1));
  CHECK(b.a21.rows() == 4);
  CHECK(b.a21(0, 0) == a(0, 4));  // complement ascending: 0, 2, 3, 5
  CHECK(b.a21(3, 1) == a(5, 1));
  CHECK(b.l.rows() == 6);

  Mat bad = a;
  bad(0, 1) += 1.0;
  CHECK_THROWS_AS(extract_blocks(bad, s), InvalidInput);
  const Blocks full = extract_blocks(a, make_selection({0, 1, 2, 3, 4, 5}, 6));
  CHECK(full.a21.rows() == 0);
}

TEST_CASE("subsample along both axes") {
  const Mat x = testing::gaussian(8, 5, 4);
  const Mat c = subsample_columns(x, make_selection({2, 0}, 5));
  CHECK(c(3, 0) == x(3, 2));
  CHECK(c(3, 1) == x(3, 0));
  const Mat r = subsample_columns(x, make_selection({6}, 8, Axis::rows));
  CHECK(r.rows() == 1);
  CHECK(r(0, 4) == x(6, 4));
}

TEST_CASE("stream_columns equals in-memory subsampling with n*l + p peak") {
  const auto path = std::filesystem::temp_directory_path() / "nyspca_stream_test.dmat";
  const Mat x = testing::gaussian(40, 30, 8);
  write_matrix(path, x);
  const Selection s = sample_uniform(30, 7, 3);
  StreamStats st;
  const Mat got = stream_columns(path, s, &st);
  CHECK(got == subsample_columns(x, s));
  CHECK(st.rows_read == 40);
  CHECK(st.peak_entries <= 40 * 7 + 30);
  CHECK_THROWS_AS(stream_columns(path, sample_uniform(31, 7, 3)), InvalidParameter);
  std::filesystem::remove(path);
}
