#include <benchmark/benchmark.h>

#include <cstdio>
#include <filesystem>
#include <random>
#include <string>

#include "pddlkit/distance.hpp"
#include "pddlkit/file_io.hpp"
#include "pddlkit/highlight.hpp"
#include "pddlkit/sexpr.hpp"

namespace {

const char* const kCorpus[] = {"logistics.pddl", "coffee.pddl", "splisus.pddl",
                               "store.pddl"};

std::string corpus(int i) {
  return pddlkit::read_file(std::filesystem::path(PDDLKIT_CORPUS_DIR) / kCorpus[i]);
}

void BM_ParseSexpr(benchmark::State& state) {
  const std::string text = corpus(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(pddlkit::parse_sexpr(text));
  }
  state.SetBytesProcessed(state.iterations() * static_cast<int64_t>(text.size()));
}
BENCHMARK(BM_ParseSexpr)->DenseRange(0, 3);

void BM_Tokenize(benchmark::State& state) {
  const std::string text = corpus(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto tokens = pddlkit::tokenize(text);
    benchmark::DoNotOptimize(pddlkit::invalid_regions(tokens, text));
  }
  state.SetBytesProcessed(state.iterations() * static_cast<int64_t>(text.size()));
}
BENCHMARK(BM_Tokenize)->DenseRange(0, 3);

void BM_Distances(benchmark::State& state) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> coord(-100, 100);
  std::string text = "(define (problem p) (:domain d)\n  (:init";
  for (int i = 0; i < state.range(0); ++i) {
    char buf[96];
    std::snprintf(buf, sizeof buf, " (location o%d %.2f %.2f)", i, coord(rng), coord(rng));
    text += buf;
  }
  text += ")\n  (:goal (and)))\n";
  for (auto _ : state) {
    benchmark::DoNotOptimize(pddlkit::augment_with_distances(text));
  }
}
BENCHMARK(BM_Distances)->Arg(5)->Arg(20)->Arg(100);

}  // namespace
BENCHMARK_MAIN();
