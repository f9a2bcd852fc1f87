#include <benchmark/benchmark.h>

#include "qortho/kernels.hpp"
#include "qortho/suites.hpp"

using namespace qortho;

namespace {

std::vector<LatticeFunction> basis(const MeasureSpec& spec) {
  std::vector<LatticeFunction> fs;
  for (int n = 0; n <= 8; ++n) fs.push_back(laguerre_on_lattice(spec, n));
  for (int p = -4; p <= 4; ++p) fs.push_back(m_on_lattice(spec, p));
  return fs;
}

void BM_GramMatrix(benchmark::State& state) {
  MeasureSpec spec(0.25, 2.0, QContext(0.5));
  auto fs = basis(spec);
  const auto policy = state.range(0) ? ExecPolicy::Parallel : ExecPolicy::Serial;
  for (auto _ : state) benchmark::DoNotOptimize(gram_matrix(spec, fs, policy));
}
BENCHMARK(BM_GramMatrix)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_VerifyAll(benchmark::State& state) {
  RunConfig cfg;
  cfg.policy = state.range(0) ? ExecPolicy::Parallel : ExecPolicy::Serial;
  for (auto _ : state) benchmark::DoNotOptimize(run_suite("all", cfg));
}
BENCHMARK(BM_VerifyAll)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
