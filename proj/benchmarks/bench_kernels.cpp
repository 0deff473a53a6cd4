#include <benchmark/benchmark.h>

#include <vector>

#include "pagecurve/ed_engine.hpp"
#include "pagecurve/free_fermion.hpp"
#include "pagecurve/hamiltonian.hpp"
#include "pagecurve/model.hpp"
#include "pagecurve/reduced_density.hpp"
#include "pagecurve/sector_basis.hpp"

using namespace pagecurve;

namespace {

ModelSetup setup_for(int M, int L, double V) { return build_params(M, L - M, V, 1, 1, 0.5, 0.02, 1.0); }

std::vector<Complex> spread_state(std::size_t n) {
  std::vector<Complex> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = Complex(1.0 / (1.0 + i % 17), 0.1 * (i % 5));
  return v;
}

}  // namespace

static void BM_ApplyHamiltonian(benchmark::State& state) {
  const int M = static_cast<int>(state.range(0));
  const int L = static_cast<int>(state.range(1));
  const auto s = setup_for(M, L, 0.8);
  const SectorBasis basis(L, M);
  const SectorHamiltonian h(s.params, basis);
  const auto in = spread_state(basis.dimension());
  std::vector<Complex> out(in.size());
  for (auto _ : state) {
    h.apply(in, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(basis.dimension()));
}
BENCHMARK(BM_ApplyHamiltonian)->Args({3, 50})->Args({4, 50})->Args({5, 30})->Unit(benchmark::kMillisecond);

static void BM_KrylovStep(benchmark::State& state) {
  const int M = static_cast<int>(state.range(0));
  const int L = static_cast<int>(state.range(1));
  const auto s = setup_for(M, L, 0.8);
  EdEngine engine(s.params, s.grid);
  for (int i = 0; i < 5; ++i) engine.advance();
  for (auto _ : state) benchmark::DoNotOptimize(engine.advance().dimension);
}
BENCHMARK(BM_KrylovStep)->Args({3, 50})->Args({4, 50})->Unit(benchmark::kMillisecond);

static void BM_ReducedDensity(benchmark::State& state) {
  const int M = static_cast<int>(state.range(0));
  const int L = static_cast<int>(state.range(1));
  const auto s = setup_for(M, L, 0.8);
  EdEngine engine(s.params, s.grid);
  for (int i = 0; i < 20; ++i) engine.advance();
  for (auto _ : state) benchmark::DoNotOptimize(engine.system_density_matrix().trace());
}
BENCHMARK(BM_ReducedDensity)->Args({3, 50})->Args({4, 50})->Unit(benchmark::kMillisecond);

static void BM_FreeCorrelations(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  const auto s = setup_for(5, L, 0.0);
  const FreeFermionEngine engine(s.params, s.grid);
  double t = 0.0;
  for (auto _ : state) {
    t += 0.02;
    benchmark::DoNotOptimize(engine.correlations_at_time(t).data());
  }
}
BENCHMARK(BM_FreeCorrelations)->Arg(50)->Arg(200)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
