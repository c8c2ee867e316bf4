#include <benchmark/benchmark.h>

#include "lpres/resolvent.hpp"
#include "lpres/sampler.hpp"

namespace {

lpres::MonotoneOperatorSpec quad_plus_l1(std::size_t dim) {
  lpres::SumOp sum;
  sum.members.push_back(
      lpres::MonotoneOperatorSpec{.variant = lpres::GradQuadraticOp{std::vector<double>(dim, 0.0), 1.0}});
  sum.members.push_back(lpres::MonotoneOperatorSpec{.variant = lpres::SubgradL1Op{0.5}});
  return {std::move(sum), std::numeric_limits<double>::infinity()};
}

void BM_ResolventNewton(benchmark::State& state) {
  auto space = lpres::SpaceDescriptor::lp(std::size_t(state.range(0)), 1.5);
  lpres::Sampler gen(space, 3);
  lpres::PrimalVector x = gen.ball_point(1.0);
  lpres::MonotoneOperatorSpec op{
      .variant = lpres::GradQuadraticOp{std::vector<double>(space.dim, 0.0), 1.0}};
  for (auto _ : state) {
    lpres::ResolventProblem problem{space, op, 1.0, x, 1e-10, 200};
    benchmark::DoNotOptimize(lpres::solve_resolvent(problem));
  }
}
BENCHMARK(BM_ResolventNewton)->Arg(2)->Arg(10);

void BM_ResolventDescent(benchmark::State& state) {
  auto space = lpres::SpaceDescriptor::lp(std::size_t(state.range(0)), 1.5);
  lpres::Sampler gen(space, 4);
  lpres::PrimalVector x = gen.ball_point(1.0);
  auto op = quad_plus_l1(space.dim);
  for (auto _ : state) {
    lpres::ResolventProblem problem{space, op, 1.0, x, 1e-10, 200};
    benchmark::DoNotOptimize(lpres::solve_resolvent(problem));
  }
}
BENCHMARK(BM_ResolventDescent)->Arg(2)->Arg(10);

}  // namespace
