#include "kbmatch/testkit.hpp"

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "kbmatch/commands.hpp"
#include "kbmatch/errors.hpp"

namespace kbmatch {

namespace {

constexpr const char* kNs = "http://example.org/gen#";

struct Family {
  std::string tag;                   // individual prefix: drug / gene / phen
  std::string ctag;                  // subclass prefix: DrugC / GeneC / PhenC
  std::vector<std::string> classes;  // [0] is the root
  std::vector<int> level;            // 0 for the root
  std::vector<std::string> members;
};

std::string gi(const char* tail) { return std::string(kNs) + tail; }

}  // namespace

GeneratedInstance generate(const GeneratorParams& params) {
  Rng rng(params.seed);
  ReservedVocab voc;
  const std::string owl_thing = "http://www.w3.org/2002/07/owl#Thing";
  const int n_sources = std::max(1, params.n_sources);
  const int depth = std::max(1, params.hierarchy_depth);

  std::ostringstream nt;
  auto emit = [&](const std::string& s, const std::string& p, const std::string& o) {
    nt << '<' << s << "> <" << p << "> <" << o << "> .\n";
  };

  const std::string c_tuple = gi("TupleRel");
  const std::string p_relates = gi("relatesTo");
  const std::string p_has_drug = gi("hasDrug");
  const std::string p_has_factor = gi("hasFactor");
  const std::string p_causes = gi("causes");
  const std::string p_influences = gi("influences");
  const std::string p_assoc = gi("isAssociatedWith");
  const std::string p_treats = gi("treats");
  const std::string p_targets = gi("targets");
  const std::string p_part_of = gi("partOf");
  const std::string p_depends = gi("dependsOn");
  const std::string p_source = gi("fromSource");
  const std::string p_closed = gi("closedFor");

  std::array<Family, 3> fams{Family{"drug", "DrugC", {gi("Drug")}, {0}, {}},
                             Family{"gene", "GeneC", {gi("GeneticFactor")}, {0}, {}},
                             Family{"phen", "PhenC", {gi("Phenotype")}, {0}, {}}};

  // Class hierarchies. Roots sit under the universal class; subclasses form a
  // DAG of bounded depth, occasionally with two parents.
  for (const Family& f : fams) emit(f.classes[0], voc.sub_class_of, owl_thing);
  emit(c_tuple, voc.sub_class_of, owl_thing);
  int n_sub = std::max(0, params.n_classes - 3);
  for (int i = 0; i < n_sub; ++i) {
    Family& f = fams[static_cast<std::size_t>(i % 3)];
    std::string name = gi((f.ctag + std::to_string(f.classes.size())).c_str());
    std::vector<std::size_t> eligible;
    for (std::size_t c = 0; c < f.classes.size(); ++c)
      if (f.level[c] < depth) eligible.push_back(c);
    std::size_t parent = eligible[static_cast<std::size_t>(rng.below(eligible.size()))];
    emit(name, voc.sub_class_of, f.classes[parent]);
    int lvl = f.level[parent] + 1;
    if (rng.chance(0.25)) {
      std::vector<std::size_t> lower;
      for (std::size_t c = 0; c < f.classes.size(); ++c)
        if (f.level[c] < lvl && c != parent) lower.push_back(c);
      if (!lower.empty())
        emit(name, voc.sub_class_of,
             f.classes[lower[static_cast<std::size_t>(rng.below(lower.size()))]]);
    }
    f.classes.push_back(name);
    f.level.push_back(lvl);
  }

  // Qualifying-predicate hierarchy; everything hangs under relatesTo so every
  // predicate named by the matching settings is present in the data.
  emit(p_causes, voc.sub_property_of, p_influences);
  emit(p_influences, voc.sub_property_of, p_assoc);
  for (const std::string* q : {&p_has_drug, &p_has_factor, &p_assoc, &p_treats, &p_targets,
                               &p_part_of, &p_depends, &p_source, &p_closed})
    emit(*q, voc.sub_property_of, p_relates);

  // Individuals; a small share stays untyped.
  int base = params.n_individuals / 3;
  std::array<int, 3> counts{base, base, params.n_individuals - 2 * base};
  for (std::size_t fi = 0; fi < 3; ++fi) {
    Family& f = fams[fi];
    for (int i = 0; i < counts[fi]; ++i) {
      std::string m = gi((f.tag + std::to_string(i)).c_str());
      f.members.push_back(m);
      if (rng.chance(0.9)) {
        std::size_t t = static_cast<std::size_t>(rng.below(f.classes.size()));
        emit(m, voc.type, f.classes[t]);
        if (rng.chance(0.25)) {
          std::size_t t2 = static_cast<std::size_t>(rng.below(f.classes.size()));
          if (t2 != t) emit(m, voc.type, f.classes[t2]);
        }
      }
    }
  }

  // Identity statements within a family.
  int n_same = static_cast<int>(params.sameas_density * params.n_individuals);
  for (int i = 0; i < n_same; ++i) {
    Family& f = fams[static_cast<std::size_t>(rng.below(3))];
    if (f.members.size() < 2) continue;
    std::size_t a = static_cast<std::size_t>(rng.below(f.members.size()));
    std::size_t b = static_cast<std::size_t>(rng.below(f.members.size()));
    if (a == b) continue;
    emit(f.members[a], voc.same_as, f.members[b]);
  }

  // partOf among genetic factors (the designated reflexive-transitive
  // predicate) and dependency links out of phenotypes.
  const Family& genes = fams[1];
  for (std::size_t i = 0; i < genes.members.size(); ++i)
    for (std::size_t j = 0; j < genes.members.size(); ++j)
      if (i != j && rng.chance(params.link_density))
        emit(genes.members[i], p_part_of, genes.members[j]);
  for (const std::string& ph : fams[2].members)
    if (rng.chance(params.link_density)) {
      const Family& tf = fams[static_cast<std::size_t>(rng.below(3))];
      if (!tf.members.empty())
        emit(ph, p_depends, tf.members[static_cast<std::size_t>(rng.below(tf.members.size()))]);
    }

  // Tuples over six argument schemas. A slice of tuples copies an earlier
  // link pattern verbatim or with one argument blanked, so that the higher
  // relatedness levels actually occur in the output.
  struct Pattern {
    std::array<std::vector<std::string>, 6> picks;
    std::array<bool, 6> closed{};
  };
  const std::array<std::size_t, 6> schema_family{0, 1, 2, 2, 0, 1};
  const std::array<const std::string*, 6> schema_pred{&p_has_drug, &p_has_factor, &p_causes,
                                                      &p_assoc,    &p_treats,    &p_targets};
  const std::array<bool, 6> member_to_tuple{true, true, false, false, false, false};

  std::vector<Pattern> pats;
  pats.reserve(static_cast<std::size_t>(std::max(0, params.n_tuples)));
  for (int t = 0; t < params.n_tuples; ++t) {
    Pattern pat;
    if (t > 0 && rng.chance(0.15)) {
      pat = pats[static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(t)))];
      if (rng.chance(0.5)) {
        std::vector<std::size_t> specified;
        for (std::size_t s = 0; s < 6; ++s)
          if (!pat.picks[s].empty()) specified.push_back(s);
        if (!specified.empty()) {
          std::size_t drop = specified[static_cast<std::size_t>(rng.below(specified.size()))];
          pat.picks[drop].clear();
          pat.closed[drop] = false;
        }
      }
    } else {
      for (std::size_t s = 0; s < 6; ++s) {
        const Family& f = fams[schema_family[s]];
        if (f.members.empty() || rng.chance(params.unknown_rate)) {
          if (!f.members.empty() && rng.chance(0.15)) pat.closed[s] = true;
          continue;
        }
        int k = 1 + static_cast<int>(rng.below(2));
        for (int x = 0; x < k; ++x) {
          const std::string& m =
              f.members[static_cast<std::size_t>(rng.below(f.members.size()))];
          if (std::find(pat.picks[s].begin(), pat.picks[s].end(), m) == pat.picks[s].end())
            pat.picks[s].push_back(m);
        }
      }
    }
    pats.push_back(std::move(pat));
  }

  for (int t = 0; t < params.n_tuples; ++t) {
    std::string tuple = gi(("tuple" + std::to_string(t)).c_str());
    emit(tuple, voc.type, c_tuple);
    emit(tuple, p_source, gi(("src" + std::to_string(t % n_sources)).c_str()));
    const Pattern& pat = pats[static_cast<std::size_t>(t)];
    for (std::size_t s = 0; s < 6; ++s) {
      for (const std::string& m : pat.picks[s]) {
        if (member_to_tuple[s])
          emit(m, *schema_pred[s], tuple);
        else
          emit(tuple, *schema_pred[s], m);
      }
      if (pat.closed[s]) emit(tuple, p_closed, fams[schema_family[s]].classes[0]);
    }
  }

  GeneratedInstance inst;
  inst.kb_text = nt.str();

  MatchingConfig& cfg = inst.config;
  cfg.tuple_class = c_tuple;
  cfg.source_predicate = p_source;
  cfg.reflexive_transitive_predicates = {p_part_of};
  cfg.ontology_views = {{"drugs", {fams[0].classes[0]}}, {"phenotypes", {fams[2].classes[0]}}};
  cfg.closed_marker_predicate = p_closed;
  PreorderConfig pre_subset;
  PreorderConfig pre_link{PreorderSpec::Kind::Link, p_part_of, ""};
  PreorderConfig pre_drugs{PreorderSpec::Kind::Ontology, "", "drugs"};
  PreorderConfig pre_phens{PreorderSpec::Kind::Ontology, "", "phenotypes"};
  cfg.arguments = {
      {1, fams[0].classes[0], p_has_drug, Direction::MemberToTuple, pre_subset},
      {2, fams[1].classes[0], p_has_factor, Direction::MemberToTuple, pre_link},
      {3, fams[2].classes[0], p_causes, Direction::TupleToMember, pre_phens},
      {4, fams[2].classes[0], p_assoc, Direction::TupleToMember, pre_phens},
      {5, fams[0].classes[0], p_treats, Direction::TupleToMember, pre_drugs},
      {6, fams[1].classes[0], p_targets, Direction::TupleToMember, pre_subset},
  };
  cfg.partition = {
      {{1, 5}, pre_subset, {}},
      {{2, 6}, pre_link, {}},
      {{3, 4}, pre_phens, {p_depends}},
  };
  cfg.gammas = {2, Rational(4, 5), 2};
  cfg.output.transitive_closure = true;
  return inst;
}

// ---------------------------------------------------------------------------
// Brute-force reference semantics. Everything below recomputes identity,
// subsumption, reachability and minimal instantiated classes per query by
// walking plain adjacency lists built straight off the raw statements; no
// canonical ids, no transitive-closure indexes, no memo tables.

namespace {

struct NaiveKb {
  const KnowledgeBase& kb;
  std::unordered_map<EntityId, std::vector<EntityId>> same;      // undirected
  std::unordered_map<EntityId, std::vector<EntityId>> up_class;  // s -> o
  std::unordered_map<EntityId, std::vector<EntityId>> dn_pred;   // o -> s
  std::unordered_map<EntityId, std::vector<EntityId>> decl;      // s -> types
  std::unordered_map<EntityId, std::vector<std::pair<EntityId, EntityId>>> out_links;
  EntityId top = kNoEntity;

  NaiveKb(const KnowledgeBase& k, const std::string& top_iri) : kb(k) {
    for (const RawTriple& t : k.rawTriples()) {
      switch (t.kind) {
        case TripleKind::Identity:
          same[t.subject].push_back(t.object);
          same[t.object].push_back(t.subject);
          break;
        case TripleKind::ClassSubsumption:
          up_class[t.subject].push_back(t.object);
          break;
        case TripleKind::PredicateSubsumption:
          dn_pred[t.object].push_back(t.subject);
          break;
        case TripleKind::Instantiation:
          decl[t.subject].push_back(t.object);
          break;
        case TripleKind::Link:
          out_links[t.subject].push_back({t.predicate, t.object});
          break;
      }
    }
    top = k.lookup(top_iri);
  }

  std::vector<EntityId> aliases(EntityId e) const {
    std::vector<EntityId> out{e};
    std::unordered_set<EntityId> seen{e};
    for (std::size_t i = 0; i < out.size(); ++i) {
      auto it = same.find(out[i]);
      if (it == same.end()) continue;
      for (EntityId n : it->second)
        if (seen.insert(n).second) out.push_back(n);
    }
    return out;
  }

  bool sameIndividual(EntityId a, EntityId b) const {
    for (EntityId x : aliases(a))
      if (x == b) return true;
    return false;
  }

  std::string repr(EntityId e) const {
    std::string best = kb.iri(e);
    for (EntityId x : aliases(e))
      if (kb.iri(x) < best) best = kb.iri(x);
    return best;
  }

  bool classLeq(EntityId c, EntityId d) const {
    std::vector<EntityId> stack{c};
    std::unordered_set<EntityId> seen{c};
    while (!stack.empty()) {
      EntityId x = stack.back();
      stack.pop_back();
      if (x == d) return true;
      auto it = up_class.find(x);
      if (it == up_class.end()) continue;
      for (EntityId n : it->second)
        if (seen.insert(n).second) stack.push_back(n);
    }
    return false;
  }

  bool classStrict(EntityId c, EntityId d) const { return classLeq(c, d) && !classLeq(d, c); }

  std::vector<EntityId> subPreds(EntityId p) const {
    std::vector<EntityId> out{p};
    std::unordered_set<EntityId> seen{p};
    for (std::size_t i = 0; i < out.size(); ++i) {
      auto it = dn_pred.find(out[i]);
      if (it == dn_pred.end()) continue;
      for (EntityId n : it->second)
        if (seen.insert(n).second) out.push_back(n);
    }
    return out;
  }

  // Declared types of any alias, closed upward through subsumption.
  std::vector<EntityId> entailedTypes(EntityId e) const {
    std::vector<EntityId> out;
    std::unordered_set<EntityId> seen;
    for (EntityId x : aliases(e)) {
      auto it = decl.find(x);
      if (it == decl.end()) continue;
      for (EntityId t : it->second) {
        std::vector<EntityId> stack{t};
        while (!stack.empty()) {
          EntityId c = stack.back();
          stack.pop_back();
          if (!seen.insert(c).second) continue;
          out.push_back(c);
          auto up = up_class.find(c);
          if (up == up_class.end()) continue;
          for (EntityId n : up->second) stack.push_back(n);
        }
      }
    }
    return out;
  }

  bool instanceOfNaive(EntityId e, EntityId c) const {
    for (EntityId t : entailedTypes(e))
      if (t == c) return true;
    return false;
  }

  std::vector<EntityId> ciNaive(EntityId e, const std::vector<EntityId>& roots) const {
    std::vector<EntityId> out;
    for (EntityId c : entailedTypes(e)) {
      bool in_view = false;
      for (EntityId r : roots)
        if (classLeq(c, r)) {
          in_view = true;
          break;
        }
      if (!in_view) continue;
      if (top != kNoEntity && classLeq(c, top) && classLeq(top, c)) continue;
      out.push_back(c);
    }
    return out;
  }

  std::vector<EntityId> msciNaive(EntityId e, const std::vector<EntityId>& roots) const {
    std::vector<EntityId> ci = ciNaive(e, roots);
    std::vector<EntityId> out;
    for (EntityId c : ci) {
      bool minimal = true;
      for (EntityId d : ci)
        if (classStrict(d, c)) {
          minimal = false;
          break;
        }
      if (minimal) out.push_back(c);
    }
    return out;
  }

  // Entailed p(a, b): a walk over identity statements (free, both ways) and
  // statements labelled exactly p, starting anywhere in a's identity class.
  bool pReach(EntityId p, EntityId a, EntityId b) const {
    std::unordered_set<EntityId> targets;
    for (EntityId x : aliases(b)) targets.insert(x);
    std::vector<EntityId> stack = aliases(a);
    std::unordered_set<EntityId> seen(stack.begin(), stack.end());
    while (!stack.empty()) {
      EntityId x = stack.back();
      stack.pop_back();
      if (targets.count(x)) return true;
      auto si = same.find(x);
      if (si != same.end())
        for (EntityId n : si->second)
          if (seen.insert(n).second) stack.push_back(n);
      auto li = out_links.find(x);
      if (li != out_links.end())
        for (auto [q, o] : li->second)
          if (q == p && seen.insert(o).second) stack.push_back(o);
    }
    return false;
  }
};

struct OracleCtx {
  const NaiveKb& nk;
  const MatchingConfig& cfg;

  std::vector<EntityId> viewRoots(const std::string& name) const {
    for (const ViewConfig& v : cfg.ontology_views)
      if (v.name == name) {
        std::vector<EntityId> out;
        for (const std::string& r : v.roots) {
          EntityId e = nk.kb.lookup(r);
          if (e != kNoEntity) out.push_back(e);
        }
        return out;
      }
    return {};
  }

  bool covered(const std::vector<EntityId>& a, const std::vector<EntityId>& b) const {
    for (EntityId e1 : a) {
      bool hit = false;
      for (EntityId e2 : b)
        if (nk.sameIndividual(e1, e2)) {
          hit = true;
          break;
        }
      if (!hit) return false;
    }
    return true;
  }

  bool memberLeqNaive(const PreorderConfig& pre, const std::vector<EntityId>& a,
                      const std::vector<EntityId>& b) const {
    switch (pre.kind) {
      case PreorderSpec::Kind::Subset:
        return covered(a, b);
      case PreorderSpec::Kind::Link: {
        EntityId p = nk.kb.lookup(pre.predicate);
        if (p == kNoEntity) return covered(a, b);  // only the reflexive core remains
        for (EntityId e1 : a) {
          bool hit = false;
          for (EntityId e2 : b)
            if (nk.pReach(p, e1, e2)) {
              hit = true;
              break;
            }
          if (!hit) return false;
        }
        return true;
      }
      case PreorderSpec::Kind::Ontology: {
        std::vector<EntityId> roots = viewRoots(pre.view);
        for (EntityId e1 : a) {
          bool member = false;
          for (EntityId e2 : b)
            if (nk.sameIndividual(e1, e2)) {
              member = true;
              break;
            }
          if (member) continue;
          std::vector<EntityId> m1 = nk.msciNaive(e1, roots);
          if (m1.empty()) return false;
          for (EntityId c1 : m1) {
            bool witness = false;
            for (EntityId e2 : b) {
              for (EntityId c2 : nk.msciNaive(e2, roots))
                if (nk.classLeq(c1, c2)) {
                  witness = true;
                  break;
                }
              if (witness) break;
            }
            if (!witness) return false;
          }
        }
        return true;
      }
    }
    return false;
  }

  bool argLeqNaive(const PreorderConfig& pre, const ArgumentValue& x,
                   const ArgumentValue& y) const {
    if (y.isUnknown()) return true;
    if (x.isUnknown()) return false;
    return memberLeqNaive(pre, x.get(), y.get());
  }

  bool valueEqual(const ArgumentValue& x, const ArgumentValue& y) const {
    if (x.isUnknown() || y.isUnknown()) return x.isUnknown() == y.isUnknown();
    return covered(x.get(), y.get()) && covered(y.get(), x.get());
  }

  std::set<std::string> reprSet(const std::vector<EntityId>& xs) const {
    std::set<std::string> out;
    for (EntityId x : xs) out.insert(nk.repr(x));
    return out;
  }

  Rational simNaive(const PreorderConfig& pre, const std::vector<EntityId>& a,
                    const std::vector<EntityId>& b) const {
    if (memberLeqNaive(pre, a, b) || memberLeqNaive(pre, b, a)) return Rational::one();
    std::set<std::string> uni = reprSet(a);
    for (const std::string& s : reprSet(b)) uni.insert(s);
    std::set<std::string> diff;
    for (EntityId e : a)
      if (!memberLeqNaive(pre, {e}, b)) diff.insert(nk.repr(e));
    for (EntityId e : b)
      if (!memberLeqNaive(pre, {e}, a)) diff.insert(nk.repr(e));
    return Rational(static_cast<std::int64_t>(uni.size() - diff.size()),
                    static_cast<std::int64_t>(uni.size()));
  }

  const ArgumentSchemaConfig* schemaAt(std::size_t pos) const {
    for (const ArgumentSchemaConfig& a : cfg.arguments)
      if (a.index == static_cast<int>(pos) + 1) return &a;
    return nullptr;
  }

  // Per-partition-block aggregate of one record: union of its specified
  // argument members, then dependency expansion routed by role class.
  std::vector<std::optional<std::vector<EntityId>>> aggregateNaive(const TupleRecord& t) const {
    std::size_t nb = cfg.partition.size();
    std::vector<std::vector<EntityId>> bases(nb);
    std::vector<bool> specified(nb, false);
    for (std::size_t k = 0; k < nb; ++k)
      for (int idx : cfg.partition[k].indices) {
        const ArgumentValue& v = t.args[static_cast<std::size_t>(idx - 1)];
        if (v.isUnknown()) continue;
        specified[k] = true;
        bases[k].insert(bases[k].end(), v.get().begin(), v.get().end());
      }

    std::vector<std::vector<EntityId>> routed(nb);
    for (std::size_t k = 0; k < nb; ++k)
      for (const std::string& dep_iri : cfg.partition[k].dependency_predicates) {
        EntityId dep = nk.kb.lookup(dep_iri);
        if (dep == kNoEntity) continue;
        std::vector<EntityId> subp = nk.subPreds(dep);
        for (EntityId m : bases[k])
          for (EntityId alias : nk.aliases(m)) {
            auto li = nk.out_links.find(alias);
            if (li == nk.out_links.end()) continue;
            for (auto [q, o] : li->second) {
              if (std::find(subp.begin(), subp.end(), q) == subp.end()) continue;
              for (std::size_t k2 = 0; k2 < nb; ++k2)
                for (int idx2 : cfg.partition[k2].indices) {
                  const ArgumentSchemaConfig* sch = schemaAt(static_cast<std::size_t>(idx2 - 1));
                  EntityId rc = nk.kb.lookup(sch->role_class);
                  if (rc != kNoEntity && nk.instanceOfNaive(o, rc)) {
                    routed[k2].push_back(o);
                    break;
                  }
                }
            }
          }
      }

    std::vector<std::optional<std::vector<EntityId>>> out(nb);
    for (std::size_t k = 0; k < nb; ++k) {
      if (!specified[k] && routed[k].empty()) continue;
      std::vector<EntityId> all = bases[k];
      all.insert(all.end(), routed[k].begin(), routed[k].end());
      // collapse identity-equal duplicates onto the least-named alias
      std::map<std::string, EntityId> by_repr;
      for (EntityId e : all) {
        std::string r = nk.repr(e);
        auto it = by_repr.find(r);
        if (it == by_repr.end() || nk.kb.iri(e) < nk.kb.iri(it->second)) by_repr[r] = e;
      }
      std::vector<EntityId> uniq;
      for (auto& [r, e] : by_repr) uniq.push_back(e);
      out[k] = std::move(uniq);
    }
    return out;
  }

  std::optional<PairVerdict> pair(const TupleRecord& t1, const TupleRecord& t2) const {
    std::size_t n = cfg.arguments.size();

    bool all = true;
    for (std::size_t i = 0; i < n && all; ++i) all = valueEqual(t1.args[i], t2.args[i]);
    if (all) return PairVerdict{RelatednessLevel::Identical, false, 1};

    std::vector<const PreorderConfig*> pres(n);
    for (std::size_t i = 0; i < n; ++i) pres[i] = &schemaAt(i)->preorder;

    all = true;
    for (std::size_t i = 0; i < n && all; ++i)
      all = argLeqNaive(*pres[i], t1.args[i], t2.args[i]) &&
            argLeqNaive(*pres[i], t2.args[i], t1.args[i]);
    if (all) return PairVerdict{RelatednessLevel::Equivalent, false, 2};

    all = true;
    for (std::size_t i = 0; i < n && all; ++i)
      all = argLeqNaive(*pres[i], t1.args[i], t2.args[i]);
    if (all) return PairVerdict{RelatednessLevel::MoreSpecific, false, 3};
    all = true;
    for (std::size_t i = 0; i < n && all; ++i)
      all = argLeqNaive(*pres[i], t2.args[i], t1.args[i]);
    if (all) return PairVerdict{RelatednessLevel::MoreSpecific, true, 3};

    all = true;
    for (std::size_t i = 0; i < n && all; ++i)
      all = valueEqual(t1.args[i], t2.args[i]) ||
            (!t2.args[i].isUnknown() && argLeqNaive(*pres[i], t1.args[i], t2.args[i])) ||
            (!t1.args[i].isUnknown() && argLeqNaive(*pres[i], t2.args[i], t1.args[i]));
    if (all) return PairVerdict{RelatednessLevel::ArgComparable, false, 4};

    auto b1 = aggregateNaive(t1);
    auto b2 = aggregateNaive(t2);
    int both_specified = 0, exact_ones = 0;
    bool all_above = true;
    for (std::size_t k = 0; k < cfg.partition.size(); ++k) {
      if (!b1[k] || !b2[k]) continue;
      ++both_specified;
      Rational s = simNaive(cfg.partition[k].preorder, *b1[k], *b2[k]);
      if (s < cfg.gammas.sim) all_above = false;
      if (s == Rational::one()) ++exact_ones;
    }
    if (both_specified >= cfg.gammas.unknown && (all_above || exact_ones >= cfg.gammas.comp))
      return PairVerdict{RelatednessLevel::WeaklyRelated, false, 5};

    return std::nullopt;
  }
};

}  // namespace

bool oracleArgLeq(const KnowledgeBase& kb, const MatchingConfig& cfg, const PreorderConfig& pre,
                  const ArgumentValue& a, const ArgumentValue& b) {
  NaiveKb nk(kb, cfg.top_class);
  return OracleCtx{nk, cfg}.argLeqNaive(pre, a, b);
}

std::optional<PairVerdict> oraclePair(const KnowledgeBase& kb, const MatchingConfig& cfg,
                                      const TupleRecord& a, const TupleRecord& b) {
  NaiveKb nk(kb, cfg.top_class);
  return OracleCtx{nk, cfg}.pair(a, b);
}

std::vector<MatchLink> oracleMatch(const KnowledgeBase& kb, const MatchingConfig& cfg,
                                   const std::vector<TupleRecord>& tuples) {
  NaiveKb nk(kb, cfg.top_class);
  OracleCtx oc{nk, cfg};

  std::vector<MatchLink> links;
  for (std::size_t i = 0; i < tuples.size(); ++i)
    for (std::size_t j = i + 1; j < tuples.size(); ++j) {
      std::optional<PairVerdict> v = oc.pair(tuples[i], tuples[j]);
      if (!v) continue;
      const std::string& ii = kb.iri(tuples[i].id);
      const std::string& jj = kb.iri(tuples[j].id);
      if (v->level == RelatednessLevel::MoreSpecific) {
        links.push_back({v->swapped ? jj : ii, v->swapped ? ii : jj, v->level, v->rule, false});
      } else {
        links.push_back({ii, jj, v->level, v->rule, false});
        links.push_back({jj, ii, v->level, v->rule, false});
      }
    }

  if (cfg.output.transitive_closure) {
    for (RelatednessLevel level : {RelatednessLevel::Identical, RelatednessLevel::Equivalent,
                                   RelatednessLevel::MoreSpecific}) {
      std::map<std::string, std::size_t> idx;
      for (const MatchLink& l : links)
        if (l.level == level) {
          idx.emplace(l.origin, idx.size());
          idx.emplace(l.destination, idx.size());
        }
      std::size_t n = idx.size();
      if (n == 0) continue;
      std::vector<std::string> names(n);
      for (const auto& [name, i] : idx) names[i] = name;
      std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
      for (const MatchLink& l : links)
        if (l.level == level) reach[idx[l.origin]][idx[l.destination]] = true;
      std::vector<std::vector<bool>> direct = reach;
      for (std::size_t m = 0; m < n; ++m)
        for (std::size_t s = 0; s < n; ++s)
          if (reach[s][m])
            for (std::size_t d = 0; d < n; ++d)
              if (reach[m][d]) reach[s][d] = true;
      for (std::size_t s = 0; s < n; ++s)
        for (std::size_t d = 0; d < n; ++d)
          if (s != d && reach[s][d] && !direct[s][d])
            links.push_back({names[s], names[d], level, ruleNumber(level), true});
    }
  }

  std::sort(links.begin(), links.end(), [](const MatchLink& x, const MatchLink& y) {
    if (x.origin != y.origin) return x.origin < y.origin;
    if (x.destination != y.destination) return x.destination < y.destination;
    return static_cast<int>(x.level) < static_cast<int>(y.level);
  });
  return links;
}

int runGen(const GeneratorParams& params, const std::string& out_dir, std::ostream& out,
           std::ostream& err) {
  try {
    GeneratedInstance inst = generate(params);
    std::filesystem::create_directories(out_dir);
    std::string kb_path = out_dir + "/kb.nt";
    std::string cfg_path = out_dir + "/config.json";
    {
      std::ofstream f(kb_path);
      if (!f) throw IoError("cannot open '" + kb_path + "' for writing");
      f << inst.kb_text;
      if (!f.flush()) throw IoError("failed writing '" + kb_path + "'");
    }
    {
      std::ofstream f(cfg_path);
      if (!f) throw IoError("cannot open '" + cfg_path + "' for writing");
      f << inst.config.toJson();
      if (!f.flush()) throw IoError("failed writing '" + cfg_path + "'");
    }
    out << "wrote " << kb_path << " and " << cfg_path << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
}

}  // namespace kbmatch
