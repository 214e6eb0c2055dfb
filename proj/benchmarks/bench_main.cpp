#include <benchmark/benchmark.h>

#include <random>

#include "nash/analysis.hpp"
#include "nash/branch.hpp"
#include "nash/campaign.hpp"
#include "nash/curve.hpp"
#include "nash/random.hpp"

using namespace nash;

namespace {

UnivarPoly random_univar(int deg, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<cd> c(deg + 1);
  for (cd& v : c) v = complex_gaussian(rng);
  return UnivarPoly(c);
}

void BM_Roots(benchmark::State& state) {
  const UnivarPoly p = random_univar(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(roots(p));
}
BENCHMARK(BM_Roots)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_Resultant(benchmark::State& state) {
  const BivarPoly s = draw_polynomial(static_cast<int>(state.range(0)), 3, 0);
  const BivarPoly sw = s.d_w();
  for (auto _ : state) benchmark::DoNotOptimize(resultant_w(s, sw));
}
BENCHMARK(BM_Resultant)->Arg(2)->Arg(3)->Arg(4)->Arg(6);

void BM_ExcludedPoints(benchmark::State& state) {
  const BivarPoly s = draw_polynomial(static_cast<int>(state.range(0)), 5, 0);
  for (auto _ : state) benchmark::DoNotOptimize(excluded_points(s, 2.0));
}
BENCHMARK(BM_ExcludedPoints)->Arg(2)->Arg(3)->Arg(4);

void BM_Continuation(benchmark::State& state) {
  const Curve c(BivarPoly{{0, 2, 1.0}, {1, 0, -1.0}});
  const auto loop = circle_loop(0.0, 1.0, 64);
  for (auto _ : state) benchmark::DoNotOptimize(continue_branch(c, 1.0, 1.0, loop));
}
BENCHMARK(BM_Continuation);

void BM_BernsteinConstant(benchmark::State& state) {
  const auto g = select_g_S(BivarPoly{{0, 1, 1.0}, {1, 1, -0.5}, {1, 0, -1.0}}, 2.0);
  const Evaluator f = Evaluator::from_branch(g);
  const CompactSpec K = CompactSpec::disk(cd{0.0}, 0.5);
  const DomainSpec omega{cd{0.0}, 1.0, static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(bernstein_constant(f, K, omega));
}
BENCHMARK(BM_BernsteinConstant)->Arg(128)->Arg(512);

void BM_SmallCampaign(benchmark::State& state) {
  CampaignConfig cfg;
  cfg.k = 2;
  cfg.n_samples = 20;
  cfg.seed = 11;
  for (auto _ : state) benchmark::DoNotOptimize(run_campaign(cfg));
}
BENCHMARK(BM_SmallCampaign)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
