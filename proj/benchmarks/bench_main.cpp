#include <benchmark/benchmark.h>

#include <vector>

#include "aucopt/evaluate.hpp"
#include "aucopt/metrics.hpp"
#include "aucopt/oracles.hpp"
#include "aucopt/rng.hpp"
#include "aucopt/solver_nd.hpp"
#include "aucopt/sweep2d.hpp"

namespace {

aucopt::Dataset gaussian_dataset(std::size_t n_per_class, std::size_t d, std::uint64_t seed) {
  aucopt::Rng rng(seed);
  std::vector<aucopt::LabeledPoint> pos, neg;
  for (std::size_t i = 0; i < n_per_class; ++i) {
    aucopt::LabeledPoint p;
    p.label = +1;
    for (std::size_t k = 0; k < d; ++k) p.coords.push_back(rng.gaussian());
    pos.push_back(std::move(p));
    aucopt::LabeledPoint q;
    q.label = -1;
    for (std::size_t k = 0; k < d; ++k) q.coords.push_back(rng.gaussian());
    neg.push_back(std::move(q));
  }
  return aucopt::Dataset(std::move(pos), std::move(neg));
}

void BM_Solve2d(benchmark::State& state) {
  const auto data = gaussian_dataset(static_cast<std::size_t>(state.range(0)), 2, 42);
  for (auto _ : state) {
    benchmark::DoNotOptimize(aucopt::solve_2d(data));
  }
  state.SetComplexityN(state.range(0) * state.range(0));
}
BENCHMARK(BM_Solve2d)->RangeMultiplier(2)->Range(64, 1024)->Complexity(benchmark::oNLogN);

void BM_Solve3d(benchmark::State& state) {
  const auto data = gaussian_dataset(static_cast<std::size_t>(state.range(0)), 3, 43);
  for (auto _ : state) {
    benchmark::DoNotOptimize(aucopt::solve_nd(data));
  }
}
BENCHMARK(BM_Solve3d)->Arg(8)->Arg(12)->Arg(16);

void BM_EvaluateAuc(benchmark::State& state) {
  const auto data = gaussian_dataset(static_cast<std::size_t>(state.range(0)), 2, 44);
  const aucopt::Direction dir{{0.7, -0.3}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(aucopt::evaluate_auc_direction(data, dir));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EvaluateAuc)->RangeMultiplier(4)->Range(256, 16384)->Complexity(benchmark::oNLogN);

void BM_AucFromScores(benchmark::State& state) {
  aucopt::Rng rng(45);
  std::vector<double> pos(static_cast<std::size_t>(state.range(0)));
  std::vector<double> neg(pos.size());
  for (double& s : pos) s = rng.gaussian();
  for (double& s : neg) s = rng.gaussian();
  for (auto _ : state) {
    benchmark::DoNotOptimize(aucopt::auc_from_scores(pos, neg, aucopt::TiePolicy::half));
  }
}
BENCHMARK(BM_AucFromScores)->RangeMultiplier(4)->Range(256, 16384);

void BM_BruteForce2d(benchmark::State& state) {
  const auto data = gaussian_dataset(static_cast<std::size_t>(state.range(0)), 2, 46);
  for (auto _ : state) {
    benchmark::DoNotOptimize(aucopt::brute_force_2d(data));
  }
}
BENCHMARK(BM_BruteForce2d)->Arg(16)->Arg(32)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
