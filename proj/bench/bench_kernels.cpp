// Serial reference kernels against their OpenMP counterparts, plus the
// sketch methods at one fixed size.

#include <benchmark/benchmark.h>

#include "nyspca/kernels.hpp"
#include "nyspca/matcore.hpp"
#include "nyspca/rng.hpp"
#include "nyspca/specapprox.hpp"

using namespace nyspca;

namespace {

Mat normal_matrix(std::size_t r, std::size_t c, std::uint64_t seed) {
  Mat m(r, c);
  CounterRng rng(seed, streams::gaussian);
  for (auto& v : m.values()) v = rng.next_normal();
  return m;
}

template <kernels::Exec E>
void BM_matmul_tn(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Mat x = normal_matrix(n, n, 1), y = normal_matrix(n, n / 8, 2);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::matmul_tn(x, y, E));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n * n * (n / 8)));
}

template <kernels::Exec E>
void BM_matmul(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Mat x = normal_matrix(n, n, 3), y = normal_matrix(n, n / 8, 4);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::matmul(x, y, E));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n * n * (n / 8)));
}

template <kernels::Exec E>
void BM_matmul_nt(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Mat x = normal_matrix(n, n, 5), y = normal_matrix(n / 8, n, 6);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::matmul_nt(x, y, E));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n * n * (n / 8)));
}

template <kernels::Exec E>
void BM_center(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Mat x = normal_matrix(n, n, 7);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::subtract_row(x, kernels::column_means(x, E), E));
}

void BM_method(benchmark::State& state) {
  const auto m = static_cast<Method>(state.range(0));
  const Mat x = center_columns(normal_matrix(1000, 2000, 8));
  const Axis axis = sample_axis(m);
  const Selection sel = sample_uniform(axis == Axis::columns ? 2000 : 1000, 100, 9, axis);
  state.SetLabel(std::string(to_string(m)));
  for (auto _ : state) benchmark::DoNotOptimize(approximate(m, x, sel));
}

}  // namespace

BENCHMARK(BM_matmul_tn<kernels::Exec::serial>)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_matmul_tn<kernels::Exec::parallel>)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_matmul<kernels::Exec::serial>)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_matmul<kernels::Exec::parallel>)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_matmul_nt<kernels::Exec::serial>)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_matmul_nt<kernels::Exec::parallel>)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_center<kernels::Exec::serial>)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_center<kernels::Exec::parallel>)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_method)->DenseRange(1, 7)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
