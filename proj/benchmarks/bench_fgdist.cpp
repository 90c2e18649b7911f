#include <algorithm>

#include <benchmark/benchmark.h>

#include <fgdist/reconstruct.hpp>
#include <fgdist/text.hpp>

using namespace fgdist;

namespace {

FormalGroupLaw t2(unsigned p, unsigned level) { return builtin_t2(Prime(p), default_cap(Prime(p), level, 2)); }

// args: p, level
void BM_SeriesMul(benchmark::State& state) {
  const Prime p(static_cast<std::uint32_t>(state.range(0)));
  const auto cap = static_cast<unsigned>(state.range(1));
  const VariableSet vars({"x", "y"}, 2);
  const auto f = parse_series(vars, cap, p, "x' + x'' + x'*x''");
  const auto g = parse_series(vars, cap, p, "y'' + x'*y'' + y' - y'*x''");
  auto acc = TruncatedSeries::constant(vars, cap, p, 1);
  for (auto _ : state) {
    acc = TruncatedSeries::constant(vars, cap, p, 1);
    for (int k = 0; k < 8; ++k) acc = acc * f * g;
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_SeriesMul)->Args({3, 12})->Args({5, 16});

// Full multiplication table of Dist(T2) from a cold cache.
void BM_DistTable(benchmark::State& state) {
  const auto p = static_cast<unsigned>(state.range(0)), level = static_cast<unsigned>(state.range(1));
  const auto law = t2(p, level);
  for (auto _ : state) {
    const DistLevel dist(law, level);
    for (std::uint32_t i = 0; i < dist.dimension(); ++i)
      for (std::uint32_t j = 0; j < dist.dimension(); ++j) benchmark::DoNotOptimize(dist.basis_product(i, j));
  }
}
BENCHMARK(BM_DistTable)->Args({2, 1})->Args({3, 1})->Args({5, 0})->Unit(benchmark::kMillisecond);

void BM_ExtractPi(benchmark::State& state) {
  const auto p = static_cast<unsigned>(state.range(0)), level = static_cast<unsigned>(state.range(1));
  const auto law = t2(p, level);
  for (auto _ : state) {
    const DistLevel dist(law, level);
    benchmark::DoNotOptimize(extract_pi(dist));
  }
}
BENCHMARK(BM_ExtractPi)->Args({3, 1})->Args({3, 2})->Args({5, 1})->Unit(benchmark::kMillisecond);

void BM_NormalForm(benchmark::State& state) {
  const auto p = static_cast<unsigned>(state.range(0)), level = static_cast<unsigned>(state.range(1));
  const DistLevel dist(t2(p, level), level);
  const auto table = extract_pi(dist);
  const auto& sh = table.splay().shape();
  // the largest monomial times itself, reversed
  Word w = sh.word(sh.dimension() - 1);
  w.insert(w.end(), w.begin(), w.end());
  std::reverse(w.begin(), w.end());
  for (auto _ : state) {
    const RewriteSystem sys(table.splay_ptr(), table);
    benchmark::DoNotOptimize(sys.normal_form(w));
  }
}
BENCHMARK(BM_NormalForm)->Args({2, 1})->Args({3, 1})->Unit(benchmark::kMicrosecond);

void BM_Confluence(benchmark::State& state) {
  const auto p = static_cast<unsigned>(state.range(0)), level = static_cast<unsigned>(state.range(1));
  const DistLevel dist(t2(p, level), level);
  const auto table = extract_pi(dist);
  for (auto _ : state) {
    const RewriteSystem sys(table.splay_ptr(), table);
    benchmark::DoNotOptimize(s_polynomial_report(sys));
  }
}
BENCHMARK(BM_Confluence)->Args({3, 1})->Args({3, 2})->Unit(benchmark::kMillisecond);

void BM_BuildU(benchmark::State& state) {
  const auto p = static_cast<unsigned>(state.range(0)), level = static_cast<unsigned>(state.range(1));
  const DistLevel dist(t2(p, level), level);
  const auto table = extract_pi(dist);
  for (auto _ : state) benchmark::DoNotOptimize(build_U(table.splay_ptr(), table));
}
BENCHMARK(BM_BuildU)->Args({2, 1})->Args({3, 1})->Args({5, 0})->Unit(benchmark::kMillisecond);

void BM_CompareWithOracle(benchmark::State& state) {
  const auto p = static_cast<unsigned>(state.range(0)), level = static_cast<unsigned>(state.range(1));
  const DistLevel dist(t2(p, level), level);
  const auto table = extract_pi(dist);
  const auto U = build_U(table.splay_ptr(), table);
  for (auto _ : state) benchmark::DoNotOptimize(compare_with_oracle(U, dist));
}
BENCHMARK(BM_CompareWithOracle)->Args({3, 1})->Unit(benchmark::kMillisecond);

void BM_DvpsVerify(benchmark::State& state) {
  const auto p = static_cast<unsigned>(state.range(0)), level = static_cast<unsigned>(state.range(1));
  const DistLevel dist(t2(p, level), level);
  const auto table = extract_pi(dist);
  const auto U = build_U(table.splay_ptr(), table);
  for (auto _ : state) benchmark::DoNotOptimize(dvps_verify(U));
}
BENCHMARK(BM_DvpsVerify)->Args({2, 1})->Args({3, 1})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
