#include <benchmark/benchmark.h>

#include <random>

#include "gwreath/graph_wreath.hpp"

using namespace gwreath;

namespace {

GammaGraph line() { return GammaGraph::translation({"a"}, {{{0, 0}, {DifferenceFamily::finite({1})}}}); }

Word random_word(const GroupSpec& delta, std::int64_t len, std::int64_t spread, std::mt19937_64& rng) {
  const auto all = elements(delta);
  std::uniform_int_distribution<std::int64_t> pos(0, spread - 1);
  std::uniform_int_distribution<std::size_t> pick(1, all.size() - 1);
  Word w;
  for (std::int64_t i = 0; i < len; ++i) w.syllables.push_back(Syllable{Vertex{0, pos(rng)}, all[pick(rng)]});
  return w;
}

void BM_CanonicalForm(benchmark::State& state) {
  const auto delta = GroupSpec::symmetric(3);
  const auto graph = line();
  std::mt19937_64 rng(7);
  const auto w = random_word(delta, state.range(0), 8, rng);
  for (auto _ : state) benchmark::DoNotOptimize(canonical_form(graph, delta, w));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CanonicalForm)->RangeMultiplier(2)->Range(8, 256)->Complexity();

void BM_FactorialResidues(benchmark::State& state) {
  const auto fam = DifferenceFamily::factorial(0);
  for (auto _ : state) benchmark::DoNotOptimize(residues_mod(fam, state.range(0)));
}
BENCHMARK(BM_FactorialResidues)->Arg(16)->Arg(256)->Arg(4096);

void BM_Separate(benchmark::State& state) {
  const Instance inst{GroupSpec::cyclic(2), line()};
  const auto x = gw_make(inst, Word{{Syllable{Vertex{0, 0}, residue(inst.delta, 1)},
                                     Syllable{Vertex{0, state.range(0)}, residue(inst.delta, 1)}}},
                         GammaElement{{0}});
  for (auto _ : state) benchmark::DoNotOptimize(separate(inst, x, 256));
}
BENCHMARK(BM_Separate)->Arg(2)->Arg(8)->Arg(32);

}  // namespace
BENCHMARK_MAIN();
