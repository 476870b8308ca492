#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kbmatch/config.hpp"
#include "kbmatch/kb.hpp"
#include "kbmatch/preorder.hpp"
#include "kbmatch/rules.hpp"
#include "kbmatch/tuples.hpp"

namespace kbmatch {

// splitmix64. Stable across platforms and standard library versions, which
// std::mt19937 + distributions are not.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }
};

struct GeneratorParams {
  std::uint64_t seed = 42;
  int n_tuples = 50;
  int n_individuals = 120;
  int n_classes = 24;      // three family roots plus subclasses
  int hierarchy_depth = 3; // subclass chain length below a family root
  double link_density = 0.10;
  double sameas_density = 0.05;
  double unknown_rate = 0.30;
  int n_sources = 2;
};

struct GeneratedInstance {
  std::string kb_text;  // N-Triples, byte-deterministic per seed
  MatchingConfig config;
};

// Synthetic pharmacogenomic-flavoured knowledge base: three individual
// families with class DAGs, a qualifying-predicate hierarchy, part-of and
// dependency links, identity statements, and reified tuples over six
// argument schemas. Same params -> byte-identical output.
GeneratedInstance generate(const GeneratorParams& params);

// Brute-force reference semantics used to validate the engine. Works off the
// raw triple list only: identity, subsumption, reachability, and minimal
// instantiators are re-derived by per-query graph walks with no canonical
// ids, no closure indexes, and no memoization.
bool oracleArgLeq(const KnowledgeBase& kb, const MatchingConfig& cfg, const PreorderConfig& pre,
                  const ArgumentValue& a, const ArgumentValue& b);
std::optional<PairVerdict> oraclePair(const KnowledgeBase& kb, const MatchingConfig& cfg,
                                      const TupleRecord& a, const TupleRecord& b);
std::vector<MatchLink> oracleMatch(const KnowledgeBase& kb, const MatchingConfig& cfg,
                                   const std::vector<TupleRecord>& tuples);

// gen subcommand: writes kb.nt and config.json into out_dir.
int runGen(const GeneratorParams& params, const std::string& out_dir, std::ostream& out,
           std::ostream& err);

}  // namespace kbmatch
