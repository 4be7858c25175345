#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "normdebt/portfolio.hpp"

namespace {

void BM_TangencyWeights(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ret(1e-5, 1e-3);
  std::uniform_real_distribution<double> risk(0.01, 0.8);
  std::vector<normdebt::PortfolioAsset> assets;
  for (int i = 0; i < state.range(0); ++i) assets.push_back({"t" + std::to_string(i), ret(rng), risk(rng)});
  for (auto _ : state) {
    const auto result = normdebt::tangency_weights(assets);
    benchmark::DoNotOptimize(normdebt::prioritize(result, assets));
  }
}
BENCHMARK(BM_TangencyWeights)->Arg(5)->Arg(100)->Arg(1000);

}  // namespace
