#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "kbmatch/kb.hpp"

namespace kbmatch {

// Value of one tuple argument: either the unknown marker or a set of
// canonical individuals (possibly empty when the data closes the argument
// explicitly). Members are kept sorted and deduplicated.
class ArgumentValue {
 public:
  static ArgumentValue unknown() { return ArgumentValue(true, {}); }
  static ArgumentValue members(std::vector<EntityId> ms) {
    std::sort(ms.begin(), ms.end());
    ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
    return ArgumentValue(false, std::move(ms));
  }

  bool isUnknown() const { return unknown_; }
  const std::vector<EntityId>& get() const { return members_; }

  friend bool operator==(const ArgumentValue& a, const ArgumentValue& b) {
    return a.unknown_ == b.unknown_ && a.members_ == b.members_;
  }

 private:
  ArgumentValue(bool unknown, std::vector<EntityId> ms)
      : unknown_(unknown), members_(std::move(ms)) {}
  bool unknown_ = true;
  std::vector<EntityId> members_;
};

// How member sets of one argument are ordered. Subset is the plain set
// ordering; Link orders through a declared reflexive-transitive predicate;
// Ontology orders by the most specific instantiated classes within a view.
struct PreorderSpec {
  enum class Kind { Subset, Link, Ontology };
  Kind kind = Kind::Subset;
  // Link only. kNoEntity (predicate absent from the data) keeps just the
  // reflexive core of the relation, which collapses to the subset ordering.
  EntityId predicate = kNoEntity;
  std::string predicate_iri;
  const OntologyView* view = nullptr;  // Ontology only

  friend bool operator==(const PreorderSpec& a, const PreorderSpec& b) {
    return a.kind == b.kind && a.predicate == b.predicate && a.view == b.view;
  }
};

// Member-set orderings. Inputs are sorted canonical id vectors.
bool subsetLeq(const std::vector<EntityId>& a, const std::vector<EntityId>& b);
bool linkLeq(const KnowledgeBase& kb, EntityId predicate, const std::vector<EntityId>& a,
             const std::vector<EntityId>& b);
bool ontoLeq(const KnowledgeBase& kb, const OntologyView& view, const std::vector<EntityId>& a,
             const std::vector<EntityId>& b);
bool memberLeq(const KnowledgeBase& kb, const PreorderSpec& spec, const std::vector<EntityId>& a,
               const std::vector<EntityId>& b);

// Argument-level ordering with the unknown-marker rules: everything is at or
// below unknown, and unknown is below nothing else.
bool argLeq(const KnowledgeBase& kb, const PreorderSpec& spec, const ArgumentValue& a,
            const ArgumentValue& b);
bool argEquiv(const KnowledgeBase& kb, const PreorderSpec& spec, const ArgumentValue& a,
              const ArgumentValue& b);

}  // namespace kbmatch
