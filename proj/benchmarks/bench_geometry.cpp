#include <benchmark/benchmark.h>

#include "lpres/sampler.hpp"
#include "lpres/space.hpp"

namespace {

void BM_DualityMap(benchmark::State& state) {
  auto space = lpres::SpaceDescriptor::lp(std::size_t(state.range(0)), 1.5);
  lpres::Sampler gen(space, 1);
  lpres::PrimalVector x = gen.ball_point(1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lpres::duality_map(x));
  }
}
BENCHMARK(BM_DualityMap)->Arg(2)->Arg(10)->Arg(50);

void BM_BregmanPhi(benchmark::State& state) {
  auto space = lpres::SpaceDescriptor::lp(std::size_t(state.range(0)), 1.5);
  lpres::Sampler gen(space, 2);
  lpres::PrimalVector x = gen.ball_point(1.0);
  lpres::PrimalVector y = gen.ball_point(1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lpres::bregman_phi(x, y));
  }
}
BENCHMARK(BM_BregmanPhi)->Arg(2)->Arg(10)->Arg(50);

}  // namespace

BENCHMARK_MAIN();
