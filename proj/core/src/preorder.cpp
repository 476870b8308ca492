#include "kbmatch/preorder.hpp"

#include <algorithm>

namespace kbmatch {

bool subsetLeq(const std::vector<EntityId>& a, const std::vector<EntityId>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool linkLeq(const KnowledgeBase& kb, EntityId predicate, const std::vector<EntityId>& a,
             const std::vector<EntityId>& b) {
  if (predicate == kNoEntity) return subsetLeq(a, b);
  for (EntityId e1 : a) {
    bool covered = false;
    for (EntityId e2 : b)
      if (kb.pReachable(predicate, e1, e2)) {
        covered = true;
        break;
      }
    if (!covered) return false;
  }
  return true;
}

bool ontoLeq(const KnowledgeBase& kb, const OntologyView& view, const std::vector<EntityId>& a,
             const std::vector<EntityId>& b) {
  Bitset target_classes(kb.classGroupCount());
  bool target_built = false;
  for (EntityId e1 : a) {
    if (std::binary_search(b.begin(), b.end(), e1)) continue;
    std::vector<GroupId> m1 = kb.msci(view, e1);
    if (m1.empty()) return false;
    if (!target_built) {
      for (EntityId e2 : b)
        for (GroupId g : kb.msci(view, e2)) target_classes.set(g);
      target_built = true;
    }
    for (GroupId g1 : m1)
      if (!kb.groupAncestors(g1).intersects(target_classes)) return false;
  }
  return true;
}

bool memberLeq(const KnowledgeBase& kb, const PreorderSpec& spec, const std::vector<EntityId>& a,
               const std::vector<EntityId>& b) {
  switch (spec.kind) {
    case PreorderSpec::Kind::Subset:
      return subsetLeq(a, b);
    case PreorderSpec::Kind::Link:
      return linkLeq(kb, spec.predicate, a, b);
    case PreorderSpec::Kind::Ontology:
      return ontoLeq(kb, *spec.view, a, b);
  }
  return false;
}

bool argLeq(const KnowledgeBase& kb, const PreorderSpec& spec, const ArgumentValue& a,
            const ArgumentValue& b) {
  if (b.isUnknown()) return true;
  if (a.isUnknown()) return false;
  return memberLeq(kb, spec, a.get(), b.get());
}

bool argEquiv(const KnowledgeBase& kb, const PreorderSpec& spec, const ArgumentValue& a,
              const ArgumentValue& b) {
  return argLeq(kb, spec, a, b) && argLeq(kb, spec, b, a);
}

}  // namespace kbmatch
