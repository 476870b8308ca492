#pragma once

#include <memory>
#include <string>
#include <vector>

#include "kbmatch/config.hpp"
#include "kbmatch/kb.hpp"
#include "kbmatch/preorder.hpp"

namespace kbmatch {

struct ResolvedArgument {
  int index = 0;                 // declared 1-based position
  EntityId role_class = kNoEntity;
  EntityId predicate = kNoEntity;
  Direction direction = Direction::TupleToMember;
  std::uint32_t spec_id = 0;     // into ResolvedConfig::specs
};

struct ResolvedBlock {
  std::vector<std::uint32_t> arg_positions;  // into ResolvedConfig::arguments
  std::uint32_t spec_id = 0;
  std::vector<EntityId> dependency_predicates;  // only the ones present in the KB
  std::vector<EntityId> role_classes;           // of the block's arguments, deduped
};

// Config bound to one knowledge base: every name resolved to an id, views
// materialized, preorders deduplicated into one spec table.
struct ResolvedConfig {
  const KnowledgeBase* kb = nullptr;
  MatchingConfig cfg;
  EntityId tuple_class = kNoEntity;
  EntityId source_predicate = kNoEntity;  // kNoEntity: label everything "unknown"
  EntityId closed_marker = kNoEntity;
  std::vector<std::unique_ptr<OntologyView>> views;  // stable addresses
  std::vector<PreorderSpec> specs;
  std::vector<ResolvedArgument> arguments;
  std::vector<ResolvedBlock> blocks;

  // Strict: throws ConfigError listing every finding when the pair is
  // inconsistent (validateConfig decides what counts).
  static ResolvedConfig resolve(const KnowledgeBase& kb, const MatchingConfig& cfg);

  const PreorderSpec& argSpec(std::size_t pos) const { return specs[arguments[pos].spec_id]; }
  const PreorderSpec& blockSpec(std::size_t k) const { return specs[blocks[k].spec_id]; }
};

// One reified tuple: its individual, provenance label, and argument values
// in schema order.
struct TupleRecord {
  EntityId id = kNoEntity;
  std::string source;
  std::vector<ArgumentValue> args;
};

// One record per instance of the tuple class, sorted by tuple IRI. Members
// instantiate the schema's role class and are linked through the schema
// predicate or any of its sub-predicates, in the schema's direction. An
// argument with no members is Unknown, unless a closed-marker statement
// (tuple, marker, role_class) asserts the emptiness.
std::vector<TupleRecord> extractTuples(const KnowledgeBase& kb, const ResolvedConfig& rc,
                                       unsigned threads = 1);

// Aggregated per-block values for one tuple: union of its specified argument
// values per block, then dependency expansion — members' dependency-linked
// individuals join the block whose role class they instantiate (individuals
// matching no block are dropped, with a warning when a sink is given).
std::vector<ArgumentValue> aggregateAll(const KnowledgeBase& kb, const ResolvedConfig& rc,
                                        const TupleRecord& t,
                                        std::vector<std::string>* warnings = nullptr);
ArgumentValue aggregate(const KnowledgeBase& kb, const ResolvedConfig& rc, const TupleRecord& t,
                        std::size_t block,
                        std::vector<std::string>* warnings = nullptr);

}  // namespace kbmatch
