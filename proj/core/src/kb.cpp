#include "kbmatch/kb.hpp"

#include <algorithm>
#include <fstream>
#include <istream>

#include "kbmatch/ntriples.hpp"

namespace kbmatch {

namespace {

// Iterative Tarjan. Fills comp_of (dense component ids) and returns the
// component count. Components come out in reverse topological order: for any
// edge u->v across components, comp_of[v] < comp_of[u].
std::size_t stronglyConnected(const std::vector<std::vector<std::uint32_t>>& adj,
                              std::vector<std::uint32_t>& comp_of) {
  constexpr std::uint32_t kUnset = 0xFFFFFFFFu;
  const std::uint32_t n = static_cast<std::uint32_t>(adj.size());
  std::vector<std::uint32_t> index(n, kUnset), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::uint32_t> stack;
  comp_of.assign(n, kUnset);
  std::uint32_t next_index = 0, next_comp = 0;

  struct Frame {
    std::uint32_t node;
    std::size_t child;
  };
  std::vector<Frame> frames;

  for (std::uint32_t root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    frames.push_back({root, 0});
    while (!frames.empty()) {
      std::uint32_t v = frames.back().node;
      if (frames.back().child < adj[v].size()) {
        std::uint32_t w = adj[v][frames.back().child++];
        if (index[w] == kUnset) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
      } else {
        frames.pop_back();
        if (!frames.empty()) {
          std::uint32_t parent = frames.back().node;
          low[parent] = std::min(low[parent], low[v]);
        }
        if (low[v] == index[v]) {
          while (true) {
            std::uint32_t w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp_of[w] = next_comp;
            if (w == v) break;
          }
          ++next_comp;
        }
      }
    }
  }
  return next_comp;
}

// Reflexive-transitive closure bitsets over the condensation. Relies on the
// reverse-topological component numbering from stronglyConnected.
std::vector<Bitset> closureOverComponents(std::size_t n_comps,
                                          const std::vector<std::pair<std::uint32_t, std::uint32_t>>& comp_edges) {
  std::vector<std::vector<std::uint32_t>> out(n_comps);
  for (auto [from, to] : comp_edges)
    if (from != to) out[from].push_back(to);
  std::vector<Bitset> closure(n_comps, Bitset(n_comps));
  for (std::uint32_t c = 0; c < n_comps; ++c) {
    closure[c].set(c);
    for (std::uint32_t d : out[c]) closure[c] |= closure[d];
  }
  return closure;
}

}  // namespace

EntityId KnowledgeBase::intern(std::string iri) {
  auto it = ids_.find(iri);
  if (it != ids_.end()) return it->second;
  EntityId id = static_cast<EntityId>(iris_.size());
  ids_.emplace(iri, id);
  iris_.push_back(std::move(iri));
  roles_.push_back(0);
  return id;
}

EntityId KnowledgeBase::lookup(std::string_view iri) const {
  auto it = ids_.find(std::string(iri));
  return it == ids_.end() ? kNoEntity : it->second;
}

EntityId KnowledgeBase::require(std::string_view iri) const {
  EntityId e = lookup(iri);
  if (e == kNoEntity) throw LookupError("unknown entity '" + std::string(iri) + "'");
  return e;
}

GroupId KnowledgeBase::classGroup(EntityId cls) const {
  if (cls == kNoEntity || cls >= class_group_.size()) return kNoGroup;
  return class_group_[cls];
}

GroupId KnowledgeBase::predicateGroup(EntityId p) const {
  if (p == kNoEntity || p >= pred_group_.size()) return kNoGroup;
  return pred_group_[p];
}

bool KnowledgeBase::subsumedBy(EntityId c1, EntityId c2) const {
  GroupId g1 = classGroup(c1), g2 = classGroup(c2);
  if (g1 == kNoGroup || g2 == kNoGroup) return false;
  return class_anc_[g1].test(g2);
}

bool KnowledgeBase::strictlySubsumedBy(EntityId c1, EntityId c2) const {
  GroupId g1 = classGroup(c1), g2 = classGroup(c2);
  if (g1 == kNoGroup || g2 == kNoGroup || g1 == g2) return false;
  return class_anc_[g1].test(g2);
}

bool KnowledgeBase::predicateSubsumedBy(EntityId p1, EntityId p2) const {
  GroupId g1 = predicateGroup(p1), g2 = predicateGroup(p2);
  if (g1 == kNoGroup || g2 == kNoGroup) return false;
  return pred_anc_[g1].test(g2);
}

std::vector<EntityId> KnowledgeBase::subPredicates(EntityId p) const {
  GroupId g = predicateGroup(p);
  if (g == kNoGroup) return {p};
  std::vector<EntityId> out;
  for (EntityId q = 0; q < pred_group_.size(); ++q) {
    GroupId gq = pred_group_[q];
    if (gq != kNoGroup && pred_anc_[gq].test(g)) out.push_back(q);
  }
  return out;
}

const std::vector<EntityId>& KnowledgeBase::declaredTypes(EntityId individual) const {
  return types_[canonical_[individual]];
}

bool KnowledgeBase::instanceOf(EntityId individual, EntityId cls) const {
  GroupId g = classGroup(cls);
  if (g == kNoGroup) return false;
  for (EntityId t : declaredTypes(individual))
    if (class_anc_[class_group_[t]].test(g)) return true;
  return false;
}

std::vector<EntityId> KnowledgeBase::instancesOf(EntityId cls) const {
  std::vector<EntityId> out;
  for (EntityId e : individuals_)
    if (instanceOf(e, cls)) out.push_back(e);
  return out;
}

std::vector<EntityId> KnowledgeBase::edgeRange(const std::vector<Edge>& order, EntityId key,
                                               EntityId predicate) const {
  Edge lo{key, predicate, 0};
  Edge hi{key, predicate, kNoEntity};
  auto first = std::lower_bound(order.begin(), order.end(), lo);
  auto last = std::upper_bound(order.begin(), order.end(), hi);
  std::vector<EntityId> out;
  out.reserve(static_cast<std::size_t>(last - first));
  for (auto it = first; it != last; ++it) out.push_back(it->b);
  return out;
}

std::vector<EntityId> KnowledgeBase::linkedObjects(EntityId subject, EntityId predicate) const {
  std::vector<EntityId> out;
  EntityId s = canonical_[subject];
  for (EntityId q : subPredicates(predicate)) {
    auto part = edgeRange(spo_, s, q);
    out.insert(out.end(), part.begin(), part.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<EntityId> KnowledgeBase::linkedSubjects(EntityId object, EntityId predicate) const {
  std::vector<EntityId> out;
  EntityId o = canonical_[object];
  for (EntityId q : subPredicates(predicate)) {
    auto part = edgeRange(ops_, o, q);
    out.insert(out.end(), part.begin(), part.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool KnowledgeBase::ReachIndex::reachable(EntityId a, EntityId b) const {
  if (a == b) return true;
  auto ia = comp_of.find(a);
  if (ia == comp_of.end()) return false;
  auto ib = comp_of.find(b);
  if (ib == comp_of.end()) return false;
  return reach[ia->second].test(ib->second);
}

bool KnowledgeBase::isDesignated(EntityId p) const { return reach_.count(p) != 0; }

bool KnowledgeBase::pReachable(EntityId p, EntityId e1, EntityId e2) const {
  auto it = reach_.find(p);
  if (it == reach_.end())
    throw ConfigError("predicate '" + (p < iris_.size() ? iris_[p] : std::string("?")) +
                      "' is not declared reflexive-transitive");
  return it->second.reachable(canonical_[e1], canonical_[e2]);
}

OntologyView KnowledgeBase::makeView(std::string name, const std::vector<std::string>& root_iris,
                                     bool include_top) const {
  const std::size_t n = classGroupCount();
  Bitset roots(n);
  for (const auto& r : root_iris) {
    EntityId e = lookup(r);
    GroupId g = classGroup(e);
    if (g == kNoGroup)
      throw ConfigError("view '" + name + "' names unknown class '" + r + "'");
    roots.set(g);
  }
  OntologyView view{std::move(name), Bitset(n), include_top};
  for (GroupId g = 0; g < n; ++g)
    if (class_anc_[g].intersects(roots)) view.member_groups.set(g);
  return view;
}

OntologyView KnowledgeBase::allClassesView(std::string name, bool include_top) const {
  const std::size_t n = classGroupCount();
  OntologyView view{std::move(name), Bitset(n), include_top};
  for (GroupId g = 0; g < n; ++g) view.member_groups.set(g);
  return view;
}

Bitset KnowledgeBase::ci(const OntologyView& view, EntityId individual) const {
  Bitset acc(classGroupCount());
  for (EntityId t : declaredTypes(individual)) acc |= class_anc_[class_group_[t]];
  acc &= view.member_groups;
  if (top_group_ != kNoGroup) {
    if (view.include_top) {
      if (view.member_groups.test(top_group_)) acc.set(top_group_);
    } else {
      acc.reset(top_group_);
    }
  }
  return acc;
}

std::vector<GroupId> KnowledgeBase::msc(const Bitset& groups) const {
  std::vector<GroupId> present;
  groups.forEach([&](std::size_t g) { present.push_back(static_cast<GroupId>(g)); });
  std::vector<GroupId> out;
  for (GroupId g : present) {
    bool minimal = true;
    for (GroupId h : present) {
      if (h != g && class_anc_[h].test(g)) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(g);
  }
  return out;
}

std::vector<GroupId> KnowledgeBase::msci(const OntologyView& view, EntityId individual) const {
  return msc(ci(view, individual));
}

KnowledgeBase loadKb(std::istream& in, const LoadOptions& opts) {
  std::vector<std::size_t> lines;
  std::vector<Triple> triples = readNTriples(in, &lines);

  KnowledgeBase kb;
  kb.opts_ = opts;
  const ReservedVocab& v = opts.vocab;

  // Pass 1: intern, classify, record roles.
  kb.raw_.reserve(triples.size());
  for (const Triple& t : triples) {
    EntityId s = kb.intern(t.subject);
    EntityId o = kb.intern(t.object);
    RawTriple rt{TripleKind::Link, s, kNoEntity, o};
    if (t.predicate == v.type) {
      rt.kind = TripleKind::Instantiation;
      kb.roles_[s] |= KnowledgeBase::kIndividualRole;
      kb.roles_[o] |= KnowledgeBase::kClassRole;
    } else if (t.predicate == v.sub_class_of) {
      rt.kind = TripleKind::ClassSubsumption;
      kb.roles_[s] |= KnowledgeBase::kClassRole;
      kb.roles_[o] |= KnowledgeBase::kClassRole;
    } else if (t.predicate == v.sub_property_of) {
      rt.kind = TripleKind::PredicateSubsumption;
      kb.roles_[s] |= KnowledgeBase::kPredicateRole;
      kb.roles_[o] |= KnowledgeBase::kPredicateRole;
    } else if (t.predicate == v.same_as) {
      rt.kind = TripleKind::Identity;
      kb.roles_[s] |= KnowledgeBase::kIndividualRole;
      kb.roles_[o] |= KnowledgeBase::kIndividualRole;
    } else {
      rt.predicate = kb.intern(t.predicate);
      kb.roles_[rt.predicate] |= KnowledgeBase::kPredicateRole;
      kb.roles_[s] |= KnowledgeBase::kIndividualRole;
      kb.roles_[o] |= KnowledgeBase::kIndividualRole;
    }
    kb.raw_.push_back(rt);
  }
  for (const std::string& p : opts.reflexive_transitive_predicates) {
    EntityId e = kb.lookup(p);
    if (e == kNoEntity)
      kb.warnings_.push_back("reflexive-transitive predicate never used in data: " + p);
    else
      kb.roles_[e] |= KnowledgeBase::kPredicateRole;
  }

  const std::size_t n_entities = kb.iris_.size();

  // Identity statements may only join individuals; joining a class or a
  // predicate would silently rewrite the vocabulary.
  for (std::size_t i = 0; i < kb.raw_.size(); ++i) {
    const RawTriple& rt = kb.raw_[i];
    if (rt.kind != TripleKind::Identity) continue;
    for (EntityId e : {rt.subject, rt.object}) {
      if (kb.roles_[e] & (KnowledgeBase::kClassRole | KnowledgeBase::kPredicateRole))
        throw ParseError("identity statement endpoint '" + kb.iris_[e] +
                             "' is also used as a class or predicate",
                         lines[i]);
    }
  }

  // Identity merging: union-find, then the least IRI of each set becomes the
  // representative so results never depend on statement order.
  std::vector<EntityId> parent(n_entities);
  for (EntityId e = 0; e < n_entities; ++e) parent[e] = e;
  auto find = [&](EntityId e) {
    while (parent[e] != e) {
      parent[e] = parent[parent[e]];
      e = parent[e];
    }
    return e;
  };
  for (const RawTriple& rt : kb.raw_)
    if (rt.kind == TripleKind::Identity) parent[find(rt.subject)] = find(rt.object);

  std::vector<EntityId> best(n_entities, kNoEntity);
  for (EntityId e = 0; e < n_entities; ++e) {
    EntityId r = find(e);
    if (best[r] == kNoEntity || kb.iris_[e] < kb.iris_[best[r]]) best[r] = e;
  }
  kb.canonical_.resize(n_entities);
  for (EntityId e = 0; e < n_entities; ++e) kb.canonical_[e] = best[find(e)];

  for (EntityId e = 0; e < n_entities; ++e)
    if ((kb.roles_[e] & KnowledgeBase::kIndividualRole) && kb.canonical_[e] == e)
      kb.individuals_.push_back(e);

  // Subsumption groups for classes and predicates. Cycles collapse.
  auto buildGroups = [&](std::uint8_t role, TripleKind kind, const char* what,
                         std::vector<GroupId>& group_of,
                         std::vector<std::vector<EntityId>>& members, std::vector<Bitset>& anc) {
    std::vector<EntityId> nodes;
    std::vector<std::uint32_t> node_of(n_entities, 0xFFFFFFFFu);
    for (EntityId e = 0; e < n_entities; ++e)
      if (kb.roles_[e] & role) {
        node_of[e] = static_cast<std::uint32_t>(nodes.size());
        nodes.push_back(e);
      }
    std::vector<std::vector<std::uint32_t>> adj(nodes.size());
    std::vector<std::pair<std::uint32_t, std::uint32_t>> raw_edges;
    for (const RawTriple& rt : kb.raw_)
      if (rt.kind == kind) {
        adj[node_of[rt.subject]].push_back(node_of[rt.object]);
        raw_edges.emplace_back(node_of[rt.subject], node_of[rt.object]);
      }
    std::vector<std::uint32_t> comp_of;
    std::size_t n_comps = stronglyConnected(adj, comp_of);

    group_of.assign(n_entities, kNoGroup);
    members.assign(n_comps, {});
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      group_of[nodes[i]] = comp_of[i];
      members[comp_of[i]].push_back(nodes[i]);
    }
    std::vector<std::pair<std::uint32_t, std::uint32_t>> comp_edges;
    comp_edges.reserve(raw_edges.size());
    for (auto [a, b] : raw_edges) comp_edges.emplace_back(comp_of[a], comp_of[b]);
    anc = closureOverComponents(n_comps, comp_edges);

    for (const auto& g : members) {
      if (g.size() < 2) continue;
      std::vector<std::string> names;
      for (EntityId e : g) names.push_back(kb.iris_[e]);
      std::sort(names.begin(), names.end());
      std::string msg = std::string("equivalent ") + what + " collapsed:";
      for (const auto& nm : names) msg += " " + nm;
      kb.warnings_.push_back(std::move(msg));
    }
  };
  buildGroups(KnowledgeBase::kClassRole, TripleKind::ClassSubsumption, "classes", kb.class_group_,
              kb.class_group_members_, kb.class_anc_);
  buildGroups(KnowledgeBase::kPredicateRole, TripleKind::PredicateSubsumption, "predicates",
              kb.pred_group_, kb.pred_group_members_, kb.pred_anc_);
  kb.top_group_ = kb.classGroup(kb.lookup(opts.top_iri));

  // Declared types, folded onto representatives.
  kb.types_.assign(n_entities, {});
  for (const RawTriple& rt : kb.raw_)
    if (rt.kind == TripleKind::Instantiation)
      kb.types_[kb.canonical_[rt.subject]].push_back(rt.object);
  for (auto& ts : kb.types_) {
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  }

  // Link edges with representative endpoints, both lookup orders.
  for (const RawTriple& rt : kb.raw_)
    if (rt.kind == TripleKind::Link) {
      EntityId s = kb.canonical_[rt.subject], o = kb.canonical_[rt.object];
      kb.spo_.push_back({s, rt.predicate, o});
      kb.ops_.push_back({o, rt.predicate, s});
    }
  auto edge_eq = [](const KnowledgeBase::Edge& x, const KnowledgeBase::Edge& y) {
    return x.a == y.a && x.pred == y.pred && x.b == y.b;
  };
  std::sort(kb.spo_.begin(), kb.spo_.end());
  kb.spo_.erase(std::unique(kb.spo_.begin(), kb.spo_.end(), edge_eq), kb.spo_.end());
  std::sort(kb.ops_.begin(), kb.ops_.end());
  kb.ops_.erase(std::unique(kb.ops_.begin(), kb.ops_.end(), edge_eq), kb.ops_.end());

  // Reachability indexes for the declared reflexive-transitive predicates.
  // Only p-labelled edges feed the index for p: the ordering follows the one
  // predicate it is parameterized by, not the predicate hierarchy.
  for (const std::string& piri : opts.reflexive_transitive_predicates) {
    EntityId p = kb.lookup(piri);
    if (p == kNoEntity) continue;

    std::vector<EntityId> nodes;
    std::unordered_map<EntityId, std::uint32_t> node_of;
    auto nodeOf = [&](EntityId e) {
      auto [it, inserted] = node_of.emplace(e, static_cast<std::uint32_t>(nodes.size()));
      if (inserted) nodes.push_back(e);
      return it->second;
    };
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (const KnowledgeBase::Edge& e : kb.spo_)
      if (e.pred == p) edges.emplace_back(nodeOf(e.a), nodeOf(e.b));
    std::vector<std::vector<std::uint32_t>> adj(nodes.size());
    for (auto [a, b] : edges) adj[a].push_back(b);

    std::vector<std::uint32_t> comp_of;
    std::size_t n_comps = stronglyConnected(adj, comp_of);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> comp_edges;
    comp_edges.reserve(edges.size());
    for (auto [a, b] : edges) comp_edges.emplace_back(comp_of[a], comp_of[b]);

    KnowledgeBase::ReachIndex idx;
    idx.reach = closureOverComponents(n_comps, comp_edges);
    for (std::size_t i = 0; i < nodes.size(); ++i) idx.comp_of.emplace(nodes[i], comp_of[i]);
    kb.reach_.emplace(p, std::move(idx));
  }

  return kb;
}

KnowledgeBase loadKbFile(const std::string& path, const LoadOptions& opts) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return loadKb(in, opts);
}

}  // namespace kbmatch
