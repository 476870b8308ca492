#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kbmatch/bitset.hpp"
#include "kbmatch/errors.hpp"

namespace kbmatch {

using EntityId = std::uint32_t;
inline constexpr EntityId kNoEntity = 0xFFFFFFFFu;

// Classes whose declared subsumptions form a cycle are collapsed into one
// group; all subsumption queries run over groups. Same for predicates.
using GroupId = std::uint32_t;
inline constexpr GroupId kNoGroup = 0xFFFFFFFFu;

enum class TripleKind : std::uint8_t {
  Link,                  // plain individual-to-individual statement
  Instantiation,         // rdf:type
  ClassSubsumption,      // rdfs:subClassOf
  PredicateSubsumption,  // rdfs:subPropertyOf
  Identity,              // owl:sameAs
};

// Statement as loaded, before identity merging. Endpoints are interned but
// NOT canonicalized, so independent re-derivations can start from scratch.
// `predicate` is kNoEntity for the four reserved kinds.
struct RawTriple {
  TripleKind kind;
  EntityId subject;
  EntityId predicate;
  EntityId object;
};

struct ReservedVocab {
  std::string type = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
  std::string sub_class_of = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
  std::string sub_property_of = "http://www.w3.org/2000/01/rdf-schema#subPropertyOf";
  std::string same_as = "http://www.w3.org/2002/07/owl#sameAs";
};

struct LoadOptions {
  ReservedVocab vocab;
  std::string top_iri = "http://www.w3.org/2002/07/owl#Thing";
  // Predicates declared reflexive and transitive; each present one gets a
  // precomputed reachability index for the link-based ordering.
  std::vector<std::string> reflexive_transitive_predicates;
};

// A named slice of the class hierarchy (a set of class groups). Queries that
// rank individuals by their types only look at classes inside the view.
// include_top flips the handling of the universal class: normally it is
// suppressed (every individual trivially instantiates it); when set, it is
// treated as an instantiated class of every individual instead.
struct OntologyView {
  std::string name;
  Bitset member_groups;
  bool include_top = false;
};

class KnowledgeBase {
 public:
  // --- identity and interning ------------------------------------------
  EntityId lookup(std::string_view iri) const;  // kNoEntity when absent
  EntityId require(std::string_view iri) const; // LookupError when absent
  const std::string& iri(EntityId e) const { return iris_[e]; }
  std::size_t entityCount() const { return iris_.size(); }

  // Representative of the identity-merged group; the lexicographically
  // least IRI in the group wins, so the choice is input-order independent.
  EntityId canonical(EntityId e) const { return canonical_[e]; }

  bool isClass(EntityId e) const { return roles_[e] & kClassRole; }
  bool isPredicate(EntityId e) const { return roles_[e] & kPredicateRole; }
  bool isIndividual(EntityId e) const { return roles_[e] & kIndividualRole; }

  // Canonical ids of all individuals, sorted by id.
  const std::vector<EntityId>& individuals() const { return individuals_; }

  // --- class subsumption ------------------------------------------------
  GroupId classGroup(EntityId cls) const;  // kNoGroup when not a class
  std::size_t classGroupCount() const { return class_anc_.size(); }
  const Bitset& groupAncestors(GroupId g) const { return class_anc_[g]; }
  bool groupSubsumedBy(GroupId g1, GroupId g2) const { return class_anc_[g1].test(g2); }
  bool subsumedBy(EntityId c1, EntityId c2) const;          // reflexive-transitive
  bool strictlySubsumedBy(EntityId c1, EntityId c2) const;  // and not equivalent
  GroupId topGroup() const { return top_group_; }

  // --- predicate subsumption ---------------------------------------------
  GroupId predicateGroup(EntityId p) const;
  bool predicateSubsumedBy(EntityId p1, EntityId p2) const;
  // All predicates at or below p (p itself included), sorted by id.
  std::vector<EntityId> subPredicates(EntityId p) const;

  // --- instantiation ------------------------------------------------------
  // Declared classes of a canonical individual (aliases folded in), sorted.
  const std::vector<EntityId>& declaredTypes(EntityId individual) const;
  bool instanceOf(EntityId individual, EntityId cls) const;  // entailed
  std::vector<EntityId> instancesOf(EntityId cls) const;     // canonical, sorted

  // --- plain links ---------------------------------------------------------
  // Canonical objects o of statements (subject, q, o) with q at or below
  // `predicate`; sorted, deduplicated. linkedSubjects mirrors it.
  std::vector<EntityId> linkedObjects(EntityId subject, EntityId predicate) const;
  std::vector<EntityId> linkedSubjects(EntityId object, EntityId predicate) const;

  // --- designated reachability ---------------------------------------------
  bool isDesignated(EntityId p) const;
  // Whether p (or a sub-predicate chain of p) connects e1 to e2, under the
  // declared reflexive-transitive reading. ConfigError when p undesignated.
  bool pReachable(EntityId p, EntityId e1, EntityId e2) const;

  // --- views and instantiated-class queries ---------------------------------
  // View spanned by the given root classes and everything below them.
  // Unknown root IRIs raise ConfigError.
  OntologyView makeView(std::string name, const std::vector<std::string>& root_iris,
                        bool include_top = false) const;
  OntologyView allClassesView(std::string name = "all", bool include_top = false) const;

  // Instantiated classes of an individual within the view: declared types
  // closed upward through subsumption, restricted to view members. The
  // universal class group is removed, or force-added for every individual
  // when the view says include_top.
  Bitset ci(const OntologyView& view, EntityId individual) const;
  // Minimal elements of a class-group set under strict subsumption.
  std::vector<GroupId> msc(const Bitset& groups) const;
  // msc of ci: the most specific instantiated classes. Sorted group ids.
  std::vector<GroupId> msci(const OntologyView& view, EntityId individual) const;

  // --- raw access -------------------------------------------------------------
  const std::vector<RawTriple>& rawTriples() const { return raw_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  const LoadOptions& options() const { return opts_; }

 private:
  friend KnowledgeBase loadKb(std::istream&, const LoadOptions&);

  static constexpr std::uint8_t kClassRole = 1;
  static constexpr std::uint8_t kPredicateRole = 2;
  static constexpr std::uint8_t kIndividualRole = 4;

  struct ReachIndex {
    std::unordered_map<EntityId, std::uint32_t> comp_of;
    std::vector<Bitset> reach;  // per component, over components, reflexive
    bool reachable(EntityId a, EntityId b) const;
  };

  struct Edge {
    EntityId a;      // subject for the spo order, object for the ops order
    EntityId pred;   // statement predicate (never canonicalized)
    EntityId b;
    friend bool operator<(const Edge& x, const Edge& y) {
      if (x.a != y.a) return x.a < y.a;
      if (x.pred != y.pred) return x.pred < y.pred;
      return x.b < y.b;
    }
  };

  EntityId intern(std::string iri);
  std::vector<EntityId> edgeRange(const std::vector<Edge>& order, EntityId key,
                                  EntityId predicate) const;

  LoadOptions opts_;
  std::unordered_map<std::string, EntityId> ids_;
  std::vector<std::string> iris_;
  std::vector<std::uint8_t> roles_;
  std::vector<EntityId> canonical_;
  std::vector<EntityId> individuals_;
  std::vector<RawTriple> raw_;

  std::vector<GroupId> class_group_;          // per entity, kNoGroup default
  std::vector<std::vector<EntityId>> class_group_members_;
  std::vector<Bitset> class_anc_;             // per class group, reflexive
  GroupId top_group_ = kNoGroup;

  std::vector<GroupId> pred_group_;
  std::vector<std::vector<EntityId>> pred_group_members_;
  std::vector<Bitset> pred_anc_;

  std::vector<std::vector<EntityId>> types_;  // per canonical individual

  std::vector<Edge> spo_;  // links, canonical endpoints, sorted (s, p, o)
  std::vector<Edge> ops_;  // same links, sorted (o, p, s)

  std::unordered_map<EntityId, ReachIndex> reach_;  // per designated predicate
  std::vector<std::string> warnings_;
};

KnowledgeBase loadKb(std::istream& in, const LoadOptions& opts);
KnowledgeBase loadKbFile(const std::string& path, const LoadOptions& opts);

}  // namespace kbmatch
