#include <benchmark/benchmark.h>

#include <random>

#include "flab/entropy.hpp"
#include "flab/furstenberg.hpp"
#include "flab/geometry.hpp"
#include "flab/polymethod.hpp"

using namespace flab;

namespace {

void BM_Rref(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Field f = Field::of_order(static_cast<std::uint32_t>(state.range(1)));
  std::mt19937_64 rng(1);
  Matrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) m.at(r, c) = f.element(static_cast<std::uint32_t>(rng() % f.order()));
  }
  for (auto _ : state) benchmark::DoNotOptimize(rref(f, m));
}
BENCHMARK(BM_Rref)->Args({8, 2})->Args({16, 3})->Args({32, 5})->Args({32, 16});

void BM_IsFurstenberg(benchmark::State& state) {
  const auto q = static_cast<std::uint32_t>(state.range(0));
  const auto n = static_cast<std::size_t>(state.range(1));
  const FurstenbergInstance inst(Field::of_order(q), n, 1, q);
  const PointSet s = trivial_construction(inst);
  for (auto _ : state) benchmark::DoNotOptimize(is_furstenberg(s, 1, q).ok);
}
BENCHMARK(BM_IsFurstenberg)->Args({3, 3})->Args({4, 3})->Args({5, 3})->Unit(benchmark::kMillisecond);

void BM_SearchExtremal(benchmark::State& state) {
  const auto q = static_cast<std::uint32_t>(state.range(0));
  const auto n = static_cast<std::size_t>(state.range(1));
  const auto k = static_cast<std::size_t>(state.range(2));
  const FurstenbergInstance inst(Field::of_order(q), n, k, static_cast<std::uint64_t>(state.range(3)));
  for (auto _ : state) benchmark::DoNotOptimize(search_extremal(inst).lower);
}
BENCHMARK(BM_SearchExtremal)
    ->Args({2, 3, 1, 2})
    ->Args({2, 4, 2, 3})
    ->Args({3, 2, 1, 3})
    ->Args({4, 2, 1, 4})
    ->Unit(benchmark::kMillisecond);

void BM_BestProjection(benchmark::State& state) {
  const auto q = static_cast<std::uint32_t>(state.range(0));
  const auto n = static_cast<std::size_t>(state.range(1));
  const AffineSpace space(Field::of_order(q), n);
  std::mt19937_64 rng(2);
  RationalDistribution dist(space);
  for (std::uint64_t i = 0; i < space.size(); ++i) dist.add_index(i, 1 + rng() % 8);
  for (auto _ : state) benchmark::DoNotOptimize(best_projection(dist, 1).entropy);
}
BENCHMARK(BM_BestProjection)->Args({2, 4})->Args({3, 3})->Args({5, 3})->Unit(benchmark::kMillisecond);

void BM_Multiplicity(benchmark::State& state) {
  const auto q = static_cast<std::uint32_t>(state.range(0));
  const Field f = Field::of_order(q);
  const std::size_t n = 3;
  std::mt19937_64 rng(3);
  Polynomial p(f, n);
  for (const auto& md : monomials_up_to(n, static_cast<std::uint32_t>(state.range(1)))) {
    p.add_term(md, f.element(static_cast<std::uint32_t>(rng() % q)));
  }
  const Point a{f.element(1), f.element(0), f.element(q - 1)};
  for (auto _ : state) benchmark::DoNotOptimize(multiplicity(p, a));
}
BENCHMARK(BM_Multiplicity)->Args({2, 6})->Args({5, 8})->Args({7, 10});

}  // namespace
BENCHMARK_MAIN();
