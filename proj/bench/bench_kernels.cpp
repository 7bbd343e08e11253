// Serial references against their OpenMP kernels.

#include <benchmark/benchmark.h>

#include <random>

#include "pbw/catalog.hpp"
#include "pbw/extremal.hpp"
#include "pbw/vermalab.hpp"

using namespace pbw;

namespace {

Element sample(const AlgebraPresentation& p, unsigned seed, int terms, int len) {
  std::mt19937 rng(seed);
  Element x;
  for (int t = 0; t < terms; ++t) {
    Word w;
    for (int k = 0; k < len; ++k) w.push_back(static_cast<int>(rng() % p.size()));
    x.add(w, RationalFunction(Rational(static_cast<long>(rng() % 13) - 6, 1 + static_cast<long>(rng() % 4))));
  }
  return normal_form(p, x);
}

const AlgebraPresentation& localized() {
  static const AlgebraPresentation p = build("u_sl2_sl2_localized");
  return p;
}

template <bool Parallel>
void BM_multiply(benchmark::State& st) {
  const auto& p = localized();
  const Element a = sample(p, 1, static_cast<int>(st.range(0)), 3), b = sample(p, 2, 6, 3);
  for (auto _ : st)
    benchmark::DoNotOptimize(Parallel ? multiply_parallel(p, a, b) : multiply_serial(p, a, b));
}

template <bool Parallel>
void BM_confluence(benchmark::State& st) {
  const auto p = build("uq_sl2_linearization");
  for (auto _ : st) benchmark::DoNotOptimize(Parallel ? check_confluence(p) : check_confluence_serial(p));
}

template <bool Parallel>
void BM_matmul(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  Matrix<Rational> a(n, std::vector<Rational>(n)), b(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      a[i][j] = Rational(static_cast<long>(i + 2 * j) - 7, static_cast<long>(j + 1));
      b[i][j] = Rational(static_cast<long>(3 * i) - static_cast<long>(j), static_cast<long>(i + 2));
    }
  for (auto _ : st) benchmark::DoNotOptimize(Parallel ? matmul_parallel(a, b) : matmul_serial(a, b));
}

template <bool Parallel>
void BM_z_multiply(benchmark::State& st) {
  static const ProjectorSeries p = build_projector(4);
  static const ZRelations z = compute_z_relations(p);
  for (auto _ : st)
    benchmark::DoNotOptimize(Parallel ? z_multiply(z.s_plus, z.s_minus, p) : z_multiply_serial(z.s_plus, z.s_minus, p));
}

}  // namespace

BENCHMARK(BM_multiply<false>)->Arg(8)->Arg(32);
BENCHMARK(BM_multiply<true>)->Arg(8)->Arg(32);
BENCHMARK(BM_confluence<false>);
BENCHMARK(BM_confluence<true>);
BENCHMARK(BM_matmul<false>)->Arg(16)->Arg(48);
BENCHMARK(BM_matmul<true>)->Arg(16)->Arg(48);
BENCHMARK(BM_z_multiply<false>)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_z_multiply<true>)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
