#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kbmatch/kb.hpp"
#include "kbmatch/preorder.hpp"
#include "kbmatch/rational.hpp"

namespace kbmatch {

// Which way the qualifying predicate points between a tuple individual and
// the members of one of its arguments.
enum class Direction : std::uint8_t { TupleToMember, MemberToTuple };

// Preorder choice as written in the config document (names, not ids).
struct PreorderConfig {
  PreorderSpec::Kind kind = PreorderSpec::Kind::Subset;
  std::string predicate;  // Link: the reflexive-transitive predicate IRI
  std::string view;       // Ontology: name of a declared view
};

struct ArgumentSchemaConfig {
  int index = 0;  // 1-based argument position
  std::string role_class;
  std::string predicate;
  Direction direction = Direction::TupleToMember;
  PreorderConfig preorder;
};

struct PartitionBlockConfig {
  std::vector<int> indices;
  PreorderConfig preorder;
  std::vector<std::string> dependency_predicates;
};

struct ViewConfig {
  std::string name;
  std::vector<std::string> roots;
};

struct GammaConfig {
  int unknown = 3;       // minimum count of blocks specified on both sides
  Rational sim{4, 5};    // similarity threshold, inclusive
  int comp = 2;          // minimum count of blocks with similarity exactly 1
};

struct OutputConfig {
  bool transitive_closure = true;
};

struct MatchingConfig {
  std::string tuple_class;
  std::string source_predicate;
  std::string top_class = "http://www.w3.org/2002/07/owl#Thing";
  std::vector<std::string> reflexive_transitive_predicates;
  std::vector<ViewConfig> ontology_views;
  std::string closed_marker_predicate;  // empty = open-world only
  std::vector<ArgumentSchemaConfig> arguments;
  std::vector<PartitionBlockConfig> partition;
  GammaConfig gammas;
  OutputConfig output;

  // Structural parse of the JSON document; ConfigError names the bad field.
  static MatchingConfig fromJson(const std::string& text);
  static MatchingConfig fromJsonFile(const std::string& path);
  // Canonical serialization; fromJson(toJson()) is the identity.
  std::string toJson() const;
  // FNV-1a over the canonical serialization; pins a run to its settings.
  std::uint64_t digest() const;
  LoadOptions loadOptions() const;
};

// Internal-consistency findings (indices, partition coverage, thresholds,
// name references). Empty result = valid.
std::vector<std::string> validateConfig(const MatchingConfig& cfg);
// Adds the KB-dependent checks: tuple class, role classes, schema
// predicates, and view roots must resolve.
std::vector<std::string> validateConfig(const MatchingConfig& cfg, const KnowledgeBase& kb);

}  // namespace kbmatch
