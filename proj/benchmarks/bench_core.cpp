#include <benchmark/benchmark.h>

#include <algorithm>

#include "razor/experiments.hpp"
#include "razor/extension.hpp"
#include "razor/proxies.hpp"
#include "razor/vocabulary_search.hpp"

using namespace razor;

static void BM_LanguageFull(benchmark::State& state) {
  const auto v = full_vocabulary(StateSpace(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(language_of(v).size());
}
BENCHMARK(BM_LanguageFull)->Arg(2)->Arg(3);

static void BM_LanguageRandom(benchmark::State& state) {
  Rng rng(1);
  std::vector<Fact> facts;
  const int n = 12;
  while (facts.size() < static_cast<std::size_t>(state.range(0))) {
    Fact f(uniform_below(rng, std::uint64_t{1} << n));
    if (std::find(facts.begin(), facts.end(), f) == facts.end()) facts.push_back(f);
  }
  const Vocabulary v(StateSpace(n), facts);
  for (auto _ : state) benchmark::DoNotOptimize(language_of(v).size());
}
BENCHMARK(BM_LanguageRandom)->Arg(8)->Arg(16)->Arg(24);

static void BM_ExtensionSet(benchmark::State& state) {
  const Language L = language_of(full_vocabulary(StateSpace(3)));
  std::vector<StatementId> ids;
  for (StatementId i = 0; i < L.size(); i += 3) ids.push_back(i);
  for (auto _ : state) benchmark::DoNotOptimize(extension_of_set(std::span<const StatementId>(ids), L).count());
}
BENCHMARK(BM_ExtensionSet);

static void BM_EnumerateTasks(benchmark::State& state) {
  const Language L = language_of(full_vocabulary(StateSpace(2)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_tasks(L, SubsetMode::lax).size());
}
BENCHMARK(BM_EnumerateTasks);

static void BM_CorrectPoliciesSweep(benchmark::State& state) {
  const Language L = language_of(full_vocabulary(StateSpace(2)));
  const auto u = enumerate_tasks(L, SubsetMode::strict);
  for (auto _ : state) {
    std::size_t total = 0;
    u.for_each([&](std::uint64_t, const Task& t) { total += correct_policies(t, L).count(); });
    benchmark::DoNotOptimize(total);
  }
}
BENCHMARK(BM_CorrectPoliciesSweep);

static void BM_GeneralisationTable(benchmark::State& state) {
  const Vocabulary v(StateSpace(4), {Fact(0b0011), Fact(0b0110), Fact(0b1100), Fact(0b1011)});
  const Language L = language_of(v);
  const auto u = enumerate_tasks(L, SubsetMode::lax);
  for (auto _ : state) benchmark::DoNotOptimize(generalisation_table(u, Population::all).probability.size());
}
BENCHMARK(BM_GeneralisationTable);

static void BM_GenExperiment(benchmark::State& state) {
  const Language L = language_of(full_vocabulary(StateSpace(2)));
  GenExperimentConfig cfg;
  cfg.trials = 1000;
  for (auto _ : state) benchmark::DoNotOptimize(generalisation_experiment(L, cfg).weakness.mean);
}
BENCHMARK(BM_GenExperiment)->Unit(benchmark::kMillisecond);

static void BM_VocabularySweep(benchmark::State& state) {
  SearchConfig cfg;
  cfg.states = 4;
  cfg.facts = 2;
  for (auto _ : state) benchmark::DoNotOptimize(search_confounded_vocabulary(cfg).perfect.size());
}
BENCHMARK(BM_VocabularySweep)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
