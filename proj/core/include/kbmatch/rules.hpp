#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "kbmatch/rational.hpp"
#include "kbmatch/tuples.hpp"

namespace kbmatch {

// The five relatedness levels, strongest to weakest. Each maps to one rule
// (1..5) and one output predicate.
enum class RelatednessLevel : std::uint8_t {
  Identical = 0,      // owl:sameAs
  Equivalent = 1,     // skos:closeMatch
  MoreSpecific = 2,   // skos:broadMatch, directed: origin is the more specific
  ArgComparable = 3,  // skos:relatedMatch
  WeaklyRelated = 4,  // skos:related
};
inline constexpr std::size_t kLevelCount = 5;

int ruleNumber(RelatednessLevel level);                       // 1..5
RelatednessLevel levelOfRule(int rule);                       // inverse
const std::string& levelPredicate(RelatednessLevel level);    // output IRI
std::optional<RelatednessLevel> levelFromPredicate(std::string_view iri);
const char* levelName(RelatednessLevel level);                // snake_case label

struct MatchLink {
  std::string origin;
  std::string destination;
  RelatednessLevel level = RelatednessLevel::Identical;
  int rule = 1;
  bool induced = false;  // produced by transitive closure, not a rule firing

  friend bool operator==(const MatchLink&, const MatchLink&) = default;
};

// Link counts per (rule, origin source, destination source).
struct SourceMatrix {
  std::map<std::tuple<int, std::string, std::string>, std::uint64_t> cells;
  void add(int rule, const std::string& origin_source, const std::string& dest_source) {
    ++cells[{rule, origin_source, dest_source}];
  }
  std::array<std::uint64_t, kLevelCount> ruleTotals() const;
};

struct RunReport {
  std::uint64_t tuple_count = 0;
  std::uint64_t pair_count = 0;  // C(tuple_count, 2)
  std::array<std::uint64_t, kLevelCount> links_per_rule{};
  double wall_seconds = 0.0;
  unsigned workers = 1;
  std::uint64_t config_digest = 0;
  std::string render() const;
};

// Elements of a whose singletons are not at-or-below b under the spec.
std::vector<EntityId> ssd(const KnowledgeBase& kb, const PreorderSpec& spec,
                          const std::vector<EntityId>& a, const std::vector<EntityId>& b);

// 1 when the sets are comparable either way; otherwise 1 minus the fraction
// of a ∪ b sitting in the symmetric semantic difference. Exact arithmetic.
Rational similarity(const KnowledgeBase& kb, const PreorderSpec& spec,
                    const std::vector<EntityId>& a, const std::vector<EntityId>& b);

struct PairVerdict {
  RelatednessLevel level = RelatednessLevel::Identical;
  bool swapped = false;  // MoreSpecific only: true when t2 is the origin
  int rule = 1;
};

// First rule that fires, in priority order; nullopt when the pair is
// unrelated. Aggregates are computed on the fly — use matchAll for runs.
std::optional<PairVerdict> matchPair(const KnowledgeBase& kb, const ResolvedConfig& rc,
                                     const TupleRecord& t1, const TupleRecord& t2);

struct MatchResult {
  std::vector<MatchLink> links;  // sorted by (origin, destination, level)
  SourceMatrix matrix;
  RunReport report;
};

// All unordered pairs, mirrored emission for the symmetric levels, optional
// per-level transitive closure (levels 1-3), deterministic output for any
// worker count. threads = 0 picks the hardware concurrency.
MatchResult matchAll(const KnowledgeBase& kb, const ResolvedConfig& rc,
                     const std::vector<TupleRecord>& tuples, unsigned threads = 0,
                     std::vector<std::string>* warnings = nullptr);

// Per-level transitive closure over the given links for the levels of Rules
// 1-3; added links are marked induced; idempotent; result re-sorted.
std::vector<MatchLink> closeTransitive(std::vector<MatchLink> links);

}  // namespace kbmatch
