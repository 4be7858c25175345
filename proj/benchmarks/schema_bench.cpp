#include <benchmark/benchmark.h>

#include <string>

#include "normdebt/schema.hpp"

namespace {

// a0 -> a1 -> ... -> a(n-1), plus one two-attribute key for the tail.
normdebt::TableDef chain(int n) {
  normdebt::TableDef table;
  table.name = "Chain";
  for (int i = 0; i < n; ++i) table.attributes.push_back({"a" + std::to_string(i), true});
  for (int i = 0; i + 1 < n; ++i) table.fds.push_back({{"a" + std::to_string(i)}, {"a" + std::to_string(i + 1)}});
  table.fds.push_back({{"a" + std::to_string(n - 1), "a" + std::to_string(n / 2)}, {"a0"}});
  return table;
}

void BM_Closure(benchmark::State& state) {
  const auto table = chain(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(normdebt::attribute_closure({"a0"}, table.fds));
}
BENCHMARK(BM_Closure)->Arg(8)->Arg(16)->Arg(30);

void BM_CandidateKeys(benchmark::State& state) {
  const auto table = chain(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(normdebt::candidate_keys(table));
}
BENCHMARK(BM_CandidateKeys)->Arg(8)->Arg(16)->Arg(24);

void BM_Classify(benchmark::State& state) {
  const auto table = chain(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(normdebt::classify_normal_form(table));
}
BENCHMARK(BM_Classify)->Arg(8)->Arg(16);

}  // namespace
