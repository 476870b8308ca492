#include "kbmatch/tuples.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace kbmatch {

namespace {

// One spec table entry per distinct preorder; identical choices share an id.
std::uint32_t internSpec(ResolvedConfig& rc, const PreorderConfig& pc) {
  PreorderSpec spec;
  spec.kind = pc.kind;
  if (pc.kind == PreorderSpec::Kind::Link) {
    spec.predicate = rc.kb->lookup(pc.predicate);  // kNoEntity: reflexive core only
    spec.predicate_iri = pc.predicate;
  } else if (pc.kind == PreorderSpec::Kind::Ontology) {
    for (const auto& v : rc.views)
      if (v->name == pc.view) spec.view = v.get();
  }
  for (std::uint32_t i = 0; i < rc.specs.size(); ++i)
    if (rc.specs[i] == spec) return i;
  rc.specs.push_back(std::move(spec));
  return static_cast<std::uint32_t>(rc.specs.size() - 1);
}

}  // namespace

ResolvedConfig ResolvedConfig::resolve(const KnowledgeBase& kb, const MatchingConfig& cfg) {
  std::vector<std::string> findings = validateConfig(cfg, kb);
  if (!findings.empty()) {
    std::string msg = "configuration rejected:";
    for (const auto& f : findings) msg += "\n  " + f;
    throw ConfigError(msg);
  }

  ResolvedConfig rc;
  rc.kb = &kb;
  rc.cfg = cfg;
  rc.tuple_class = kb.lookup(cfg.tuple_class);
  rc.source_predicate =
      cfg.source_predicate.empty() ? kNoEntity : kb.lookup(cfg.source_predicate);
  rc.closed_marker =
      cfg.closed_marker_predicate.empty() ? kNoEntity : kb.lookup(cfg.closed_marker_predicate);

  for (const auto& vc : cfg.ontology_views)
    rc.views.push_back(std::make_unique<OntologyView>(kb.makeView(vc.name, vc.roots)));

  // Arguments sorted by declared position; validate guarantees 1..n coverage.
  std::vector<const ArgumentSchemaConfig*> by_index(cfg.arguments.size());
  for (const auto& a : cfg.arguments) by_index[static_cast<std::size_t>(a.index - 1)] = &a;
  for (const ArgumentSchemaConfig* a : by_index) {
    ResolvedArgument ra;
    ra.index = a->index;
    ra.role_class = kb.lookup(a->role_class);
    ra.predicate = kb.lookup(a->predicate);
    ra.direction = a->direction;
    ra.spec_id = internSpec(rc, a->preorder);
    rc.arguments.push_back(ra);
  }

  for (const auto& bc : cfg.partition) {
    ResolvedBlock rb;
    for (int i : bc.indices) rb.arg_positions.push_back(static_cast<std::uint32_t>(i - 1));
    std::sort(rb.arg_positions.begin(), rb.arg_positions.end());
    rb.spec_id = internSpec(rc, bc.preorder);
    for (const auto& d : bc.dependency_predicates) {
      EntityId e = kb.lookup(d);
      if (e != kNoEntity) rb.dependency_predicates.push_back(e);
    }
    for (std::uint32_t pos : rb.arg_positions) rb.role_classes.push_back(rc.arguments[pos].role_class);
    std::sort(rb.role_classes.begin(), rb.role_classes.end());
    rb.role_classes.erase(std::unique(rb.role_classes.begin(), rb.role_classes.end()),
                          rb.role_classes.end());
    rc.blocks.push_back(std::move(rb));
  }

  return rc;
}

namespace {

TupleRecord extractOne(const KnowledgeBase& kb, const ResolvedConfig& rc, EntityId tuple) {
  TupleRecord t;
  t.id = tuple;

  t.source = "unknown";
  if (rc.source_predicate != kNoEntity) {
    std::vector<EntityId> labels = kb.linkedObjects(tuple, rc.source_predicate);
    const std::string* best = nullptr;
    for (EntityId e : labels) {
      const std::string& s = kb.iri(e);
      if (!best || s < *best) best = &s;
    }
    if (best) t.source = *best;
  }

  std::vector<EntityId> closed_roles;
  if (rc.closed_marker != kNoEntity) closed_roles = kb.linkedObjects(tuple, rc.closed_marker);

  for (const ResolvedArgument& a : rc.arguments) {
    std::vector<EntityId> linked = a.direction == Direction::TupleToMember
                                       ? kb.linkedObjects(tuple, a.predicate)
                                       : kb.linkedSubjects(tuple, a.predicate);
    std::vector<EntityId> ms;
    for (EntityId e : linked)
      if (kb.instanceOf(e, a.role_class)) ms.push_back(e);
    if (ms.empty() &&
        !std::binary_search(closed_roles.begin(), closed_roles.end(), a.role_class))
      t.args.push_back(ArgumentValue::unknown());
    else
      t.args.push_back(ArgumentValue::members(std::move(ms)));
  }
  return t;
}

}  // namespace

std::vector<TupleRecord> extractTuples(const KnowledgeBase& kb, const ResolvedConfig& rc,
                                       unsigned threads) {
  std::vector<EntityId> instances = kb.instancesOf(rc.tuple_class);
  std::sort(instances.begin(), instances.end(),
            [&](EntityId a, EntityId b) { return kb.iri(a) < kb.iri(b); });

  std::vector<TupleRecord> out(instances.size());
  if (threads == 0) threads = std::thread::hardware_concurrency();
  if (threads <= 1 || instances.size() < 2) {
    for (std::size_t i = 0; i < instances.size(); ++i)
      out[i] = extractOne(kb, rc, instances[i]);
    return out;
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next.fetch_add(1); i < instances.size(); i = next.fetch_add(1))
      out[i] = extractOne(kb, rc, instances[i]);
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return out;
}

std::vector<ArgumentValue> aggregateAll(const KnowledgeBase& kb, const ResolvedConfig& rc,
                                        const TupleRecord& t,
                                        std::vector<std::string>* warnings) {
  const std::size_t m = rc.blocks.size();
  std::vector<std::vector<EntityId>> members(m);
  std::vector<bool> specified(m, false);

  for (std::size_t k = 0; k < m; ++k) {
    for (std::uint32_t pos : rc.blocks[k].arg_positions) {
      const ArgumentValue& v = t.args[pos];
      if (v.isUnknown()) continue;
      specified[k] = true;
      members[k].insert(members[k].end(), v.get().begin(), v.get().end());
    }
    std::sort(members[k].begin(), members[k].end());
    members[k].erase(std::unique(members[k].begin(), members[k].end()), members[k].end());
  }

  // Dependency expansion: follow each block's dependency predicates from its
  // own (pre-expansion) members; every target lands in the block whose role
  // class it instantiates, which may be a different block.
  std::vector<std::vector<EntityId>> routed(m);
  for (std::size_t k = 0; k < m; ++k) {
    if (rc.blocks[k].dependency_predicates.empty()) continue;
    for (EntityId member : members[k])
      for (EntityId dep : rc.blocks[k].dependency_predicates)
        for (EntityId target : kb.linkedObjects(member, dep)) {
          bool matched = false;
          for (std::size_t j = 0; j < m; ++j)
            for (EntityId rcls : rc.blocks[j].role_classes)
              if (kb.instanceOf(target, rcls)) {
                routed[j].push_back(target);
                matched = true;
                break;
              }
          if (!matched && warnings)
            warnings->push_back("tuple " + kb.iri(t.id) + ": dependency-linked individual " +
                                kb.iri(target) + " matches no block role class; dropped");
        }
  }

  std::vector<ArgumentValue> out;
  out.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    members[k].insert(members[k].end(), routed[k].begin(), routed[k].end());
    if (!specified[k] && routed[k].empty())
      out.push_back(ArgumentValue::unknown());
    else
      out.push_back(ArgumentValue::members(std::move(members[k])));
  }
  return out;
}

ArgumentValue aggregate(const KnowledgeBase& kb, const ResolvedConfig& rc, const TupleRecord& t,
                        std::size_t block, std::vector<std::string>* warnings) {
  return aggregateAll(kb, rc, t, warnings)[block];
}

}  // namespace kbmatch
