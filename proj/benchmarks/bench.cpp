#include <benchmark/benchmark.h>

#include <algorithm>
#include <cstdint>
#include <sstream>

#include "kbmatch/kb.hpp"
#include "kbmatch/preorder.hpp"
#include "kbmatch/rules.hpp"
#include "kbmatch/testkit.hpp"
#include "kbmatch/tuples.hpp"

using namespace kbmatch;

namespace {

// One generated world shared by the ordering/pair benchmarks. Members are
// built in place: rc keeps a pointer into kb.
struct World {
  GeneratedInstance inst;
  KnowledgeBase kb;
  ResolvedConfig rc;
  std::vector<TupleRecord> tuples;

  explicit World(int n_tuples)
      : inst(generate(params(n_tuples))),
        kb(load(inst)),
        rc(ResolvedConfig::resolve(kb, inst.config)),
        tuples(extractTuples(kb, rc)) {}

 private:
  static GeneratorParams params(int n_tuples) {
    GeneratorParams p;
    p.seed = 7;
    p.n_tuples = n_tuples;
    p.n_individuals = std::max(120, n_tuples / 2);
    return p;
  }
  static KnowledgeBase load(const GeneratedInstance& inst) {
    std::istringstream in(inst.kb_text);
    return loadKb(in, inst.config.loadOptions());
  }
};

const World& smallWorld() {
  static World w(200);
  return w;
}

void BM_LoadKb(benchmark::State& state) {
  const auto& w = smallWorld();
  for (auto _ : state) {
    std::istringstream in(w.inst.kb_text);
    auto kb = loadKb(in, w.inst.config.loadOptions());
    benchmark::DoNotOptimize(kb.individuals().size());
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * w.inst.kb_text.size()));
}
BENCHMARK(BM_LoadKb);

void BM_ExtractTuples(benchmark::State& state) {
  const auto& w = smallWorld();
  for (auto _ : state) {
    auto tuples = extractTuples(w.kb, w.rc);
    benchmark::DoNotOptimize(tuples.size());
  }
}
BENCHMARK(BM_ExtractTuples);

// argLeq across the three ordering kinds, over the argument values the
// extracted tuples actually carry.
void BM_ArgLeq(benchmark::State& state) {
  const auto& w = smallWorld();
  std::size_t pos = static_cast<std::size_t>(state.range(0));
  const PreorderSpec& spec = w.rc.argSpec(pos);
  std::vector<const ArgumentValue*> vals;
  for (const auto& t : w.tuples) vals.push_back(&t.args[pos]);
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& a = *vals[i % vals.size()];
    const auto& b = *vals[(i * 7 + 3) % vals.size()];
    benchmark::DoNotOptimize(argLeq(w.kb, spec, a, b));
    ++i;
  }
}
// argument positions: 0 orders by subset, 2 through part-of links, 4 by class
BENCHMARK(BM_ArgLeq)->Arg(0)->Arg(2)->Arg(4);

void BM_MatchPair(benchmark::State& state) {
  const auto& w = smallWorld();
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& a = w.tuples[i % w.tuples.size()];
    const auto& b = w.tuples[(i * 13 + 1) % w.tuples.size()];
    benchmark::DoNotOptimize(matchPair(w.kb, w.rc, a, b));
    ++i;
  }
}
BENCHMARK(BM_MatchPair);

// Full run scaling: tuples x workers. Pair count grows quadratically.
void BM_MatchAll(benchmark::State& state) {
  World w(static_cast<int>(state.range(0)));
  unsigned threads = static_cast<unsigned>(state.range(1));
  for (auto _ : state) {
    auto r = matchAll(w.kb, w.rc, w.tuples, threads);
    benchmark::DoNotOptimize(r.links.size());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(w.tuples.size() * (w.tuples.size() - 1) / 2));
}
BENCHMARK(BM_MatchAll)
    ->Args({200, 1})
    ->Args({200, 4})
    ->Args({800, 1})
    ->Args({800, 4})
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
