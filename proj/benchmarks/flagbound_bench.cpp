#include <benchmark/benchmark.h>

#include <random>

#include "flagbound/certificate.hpp"
#include "flagbound/enumerate.hpp"
#include "flagbound/jump.hpp"
#include "flagbound/lagrangian.hpp"
#include "flagbound/sdp.hpp"
#include "flagbound/symmetry.hpp"

using namespace flagbound;

namespace {

Hypergraph random_graph(std::mt19937_64& rng, int n) {
  std::vector<VertexMask> e;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c)
        if (rng() & 1) e.push_back((1u << a) | (1u << b) | (1u << c));
  return Hypergraph(3, n, e);
}

void BM_CanonicalForm(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::vector<Hypergraph> gs;
  for (int i = 0; i < 64; ++i) gs.push_back(random_graph(rng, static_cast<int>(state.range(0))));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(canonical_form(gs[i++ % gs.size()]));
}
BENCHMARK(BM_CanonicalForm)->Arg(6)->Arg(7)->Arg(8);

void BM_Enumerate(benchmark::State& state) {
  auto family = builtin_family("F-prime");
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_admissible(family, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Enumerate)->Arg(6)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_PairTensor(benchmark::State& state) {
  auto family = builtin_family("F-prime");
  auto graphs = enumerate_admissible(family, 7);
  auto sigma = TypeSigma(Hypergraph::from_compact(3, 5, "123 124 345"));
  auto basis = enumerate_flags(sigma, 6, family);
  for (auto _ : state) benchmark::DoNotOptimize(pair_density_tensor(basis, graphs));
}
BENCHMARK(BM_PairTensor)->Unit(benchmark::kMillisecond);

void BM_VerifyPsd(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(2);
  RationalMatrix l(n, std::vector<Rational>(n));
  for (auto& row : l)
    for (auto& x : row) x = Rational(static_cast<long>(rng() % 2001) - 1000, 997);
  RationalMatrix q(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) q[i][j] += l[i][k] * l[j][k];
  for (auto _ : state) benchmark::DoNotOptimize(verify_psd(q));
}
BENCHMARK(BM_VerifyPsd)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_Maximize(benchmark::State& state) {
  auto f = builtin_family("F-prime").members()[3];
  for (auto _ : state) benchmark::DoNotOptimize(maximize(f));
}
BENCHMARK(BM_Maximize)->Unit(benchmark::kMillisecond);

void BM_SolveK4MinusL6(benchmark::State& state) {
  std::vector<TypeSpec> specs{{TypeSigma(Hypergraph(3, 2)), 4},
                              {TypeSigma(Hypergraph::from_compact(3, 3, "123")), 4},
                              {TypeSigma(Hypergraph(3, 4)), 5}};
  auto p = assemble(builtin_family("K4-minus"), 6, specs, Coordinates::Block);
  for (auto _ : state) benchmark::DoNotOptimize(solve_embedded(p));
}
BENCHMARK(BM_SolveK4MinusL6)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
