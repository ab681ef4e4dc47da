// Serial reference loops against the OpenMP kernels.

#include <benchmark/benchmark.h>

#include <numeric>

#include "ifcdms/gaussian.hpp"
#include "ifcdms/regions.hpp"
#include "ifcdms/search.hpp"
#include "ifcdms/testbed.hpp"

using namespace ifcdms;

namespace {

ExecPolicy policy_of(const benchmark::State& s) { return s.range(0) == 0 ? ExecPolicy::serial : ExecPolicy::parallel; }

std::vector<std::vector<double>> chains(std::uint64_t seed, const std::vector<std::size_t>& blocks, int n) {
  SplitMix64 rng(seed);
  std::vector<std::vector<double>> out;
  for (int k = 0; k < n; ++k) {
    std::vector<double> x;
    for (auto b : blocks) {
      std::vector<double> s(b);
      random_simplex_point(rng, s);
      x.insert(x.end(), s.begin(), s.end());
    }
    out.push_back(std::move(x));
  }
  return out;
}

void BM_AuxBatch(benchmark::State& state) {
  SplitMix64 rng(1);
  const auto ch = random_channel(rng, 3, 3, 3, 3);
  const ChainEvaluator ev(ch);
  const auto xs = chains(2, aux_blocks(3, 3, 5), 4096);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_aux_batch(ev, 5, xs, policy_of(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(xs.size()));
}

void BM_GPBatch(benchmark::State& state) {
  SplitMix64 rng(3);
  const auto ch = random_channel(rng, 2, 2, 2, 2);
  const ChainEvaluator ev(ch);
  const auto xs = chains(4, gp_blocks(2, 2, 5, 11), 4096);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_gp_batch(ev, 5, 11, xs, policy_of(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(xs.size()));
}

void BM_GaussSweep(benchmark::State& state) {
  const GaussianParams g{6, 6, 0.5477225575, 0.5477225575};
  for (auto _ : state) benchmark::DoNotOptimize(sweep(g, GaussCurve::t1, 100001, policy_of(state)));
}

void BM_Falsify(benchmark::State& state) {
  SplitMix64 rng(5);
  const auto ch = random_channel(rng, 3, 3, 3, 3);
  const std::size_t n = 9;
  std::vector<std::size_t> groups(n);
  std::iota(groups.begin(), groups.end(), 0);
  const MiGapObjective obj(ch, MiGapObjective::Param::product, 1,
                           {{+1, MiGapObjective::Output::y2, groups, n}, {-1, MiGapObjective::Output::y1, groups, n}});
  FalsifyConfig cfg;
  cfg.policy = policy_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(falsify(obj, cfg));
}

void BM_RinRegion(benchmark::State& state) {
  SplitMix64 rng(6);
  const auto ch = random_channel(rng, 2, 2, 2, 2);
  GridConfig g;
  g.policy = policy_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(rin_region(ch, 3, 4, g));
}

}  // namespace

BENCHMARK(BM_AuxBatch)->Arg(0)->Arg(1)->ArgName("parallel");
BENCHMARK(BM_GPBatch)->Arg(0)->Arg(1)->ArgName("parallel");
BENCHMARK(BM_GaussSweep)->Arg(0)->Arg(1)->ArgName("parallel");
BENCHMARK(BM_Falsify)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RinRegion)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
