// Serial reference vs OpenMP kernels on the same seeded workloads.

#include <benchmark/benchmark.h>

#include "rdperm/experiments.hpp"
#include "rdperm/measures.hpp"

using namespace rdperm;

namespace {

Execution mode(const benchmark::State& state) { return state.range(0) ? Execution::parallel : Execution::serial; }

void label(benchmark::State& state) { state.SetLabel(state.range(0) ? "parallel" : "serial"); }

void BM_EmpiricalProjection(benchmark::State& state) {
  const OmegaPoint omega = OmegaPoint::alpha_p(AlphaSpec::with_rule({}, TailRule::square), 0.5);
  for (auto _ : state) {
    auto d = empirical_distribution(4, 200'000, 7, [&](RandomStream& rng) { return sample_projection(omega, 4, rng); },
                                    mode(state));
    benchmark::DoNotOptimize(d);
  }
  label(state);
}

void BM_ElementaryMonteCarlo(benchmark::State& state) {
  const RecordWord rho = RecordWord::parse("1101101011000101");
  for (auto _ : state) {
    auto d = elementary_projection_mc(rho, 4, 200'000, 7, mode(state));
    benchmark::DoNotOptimize(d);
  }
  label(state);
}

void BM_RecordGrowthReplicates(benchmark::State& state) {
  ExperimentConfig c;
  c.omega = OmegaPoint::alpha_p(AlphaSpec::with_rule({}, TailRule::square), 0.5);
  c.sizes = {100, 1000, 10000};
  c.replicates = 32;
  c.seed = 1;
  c.execution = mode(state);
  for (auto _ : state) {
    auto rep = record_growth(c);
    benchmark::DoNotOptimize(rep);
  }
  label(state);
}

}  // namespace

BENCHMARK(BM_EmpiricalProjection)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ElementaryMonteCarlo)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RecordGrowthReplicates)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
