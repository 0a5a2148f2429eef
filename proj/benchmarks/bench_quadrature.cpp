#include <benchmark/benchmark.h>

#include "decaylab/amplitude.hpp"
#include "decaylab/asymptotics.hpp"

using namespace decaylab;

namespace {

void BM_Integrate(benchmark::State& state) {
  const QuadConfig cfg;
  const MddSpec toy = make_toy_mdd({0, 1});
  const double tau = static_cast<double>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(integrate({toy, 0.0, tau}, cfg));
}
BENCHMARK(BM_Integrate)->Arg(1)->Arg(10)->Arg(100)->Arg(200);

void BM_IntegrateFractionalExponent(benchmark::State& state) {
  const QuadConfig cfg;
  const MddSpec toy = make_toy_mdd({1.5, 1});
  const double tau = static_cast<double>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(integrate({toy, 2.0, tau}, cfg));
}
BENCHMARK(BM_IntegrateFractionalExponent)->Arg(10)->Arg(100);

void BM_Oracle(benchmark::State& state) {
  const MddSpec toy = make_toy_mdd({0, 1});
  const int panels = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(oracle_integrate({toy, 0.0, 40.0}, panels));
}
BENCHMARK(BM_Oracle)->Arg(1 << 12)->Arg(1 << 14);

void BM_TwoMassProbability(benchmark::State& state) {
  const QuadConfig cfg;
  const TwoMassState two{make_toy_mdd({0, 1}), make_toy_mdd({2, 2}), 0.5, 0.5};
  const double tau = static_cast<double>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(prob_two(two, 2.0, tau, cfg));
}
BENCHMARK(BM_TwoMassProbability)->Arg(5)->Arg(50);

void BM_Moment(benchmark::State& state) {
  const MddSpec toy = make_toy_mdd({1, 1});
  for (auto _ : state) benchmark::DoNotOptimize(moment(toy, 2.0, 1.5));
}
BENCHMARK(BM_Moment);

void BM_LongTimeModel(benchmark::State& state) {
  const TwoMassState two{make_toy_mdd({1, 1}), make_toy_mdd({1, 2}), 0.5, 0.5};
  for (auto _ : state) benchmark::DoNotOptimize(long_time(two, 2.0));
}
BENCHMARK(BM_LongTimeModel);

}  // namespace

BENCHMARK_MAIN();
