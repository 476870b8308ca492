#include "kbmatch/rules.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>
#include <unordered_map>
#include <unordered_set>

namespace kbmatch {

namespace {

const std::string kLevelIris[kLevelCount] = {
    "http://www.w3.org/2002/07/owl#sameAs",
    "http://www.w3.org/2004/02/skos/core#closeMatch",
    "http://www.w3.org/2004/02/skos/core#broadMatch",
    "http://www.w3.org/2004/02/skos/core#relatedMatch",
    "http://www.w3.org/2004/02/skos/core#related",
};

const char* kLevelNames[kLevelCount] = {
    "identical", "equivalent", "more_specific", "arg_comparable", "weakly_related",
};

}  // namespace

int ruleNumber(RelatednessLevel level) { return static_cast<int>(level) + 1; }

RelatednessLevel levelOfRule(int rule) { return static_cast<RelatednessLevel>(rule - 1); }

const std::string& levelPredicate(RelatednessLevel level) {
  return kLevelIris[static_cast<std::size_t>(level)];
}

std::optional<RelatednessLevel> levelFromPredicate(std::string_view iri) {
  for (std::size_t i = 0; i < kLevelCount; ++i)
    if (kLevelIris[i] == iri) return static_cast<RelatednessLevel>(i);
  return std::nullopt;
}

const char* levelName(RelatednessLevel level) {
  return kLevelNames[static_cast<std::size_t>(level)];
}

std::array<std::uint64_t, kLevelCount> SourceMatrix::ruleTotals() const {
  std::array<std::uint64_t, kLevelCount> totals{};
  for (const auto& [key, count] : cells) totals[static_cast<std::size_t>(std::get<0>(key)) - 1] += count;
  return totals;
}

std::string RunReport::render() const {
  char buf[128];
  std::string s;
  s += "tuples: " + std::to_string(tuple_count) + "\n";
  s += "pairs: " + std::to_string(pair_count) + "\n";
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < kLevelCount; ++i) {
    total += links_per_rule[i];
    s += "links[" + std::string(kLevelNames[i]) + "]: " + std::to_string(links_per_rule[i]) + "\n";
  }
  s += "links[total]: " + std::to_string(total) + "\n";
  s += "workers: " + std::to_string(workers) + "\n";
  std::snprintf(buf, sizeof(buf), "wall_seconds: %.3f\n", wall_seconds);
  s += buf;
  std::snprintf(buf, sizeof(buf), "config_digest: %016llx\n",
                static_cast<unsigned long long>(config_digest));
  s += buf;
  return s;
}

std::vector<EntityId> ssd(const KnowledgeBase& kb, const PreorderSpec& spec,
                          const std::vector<EntityId>& a, const std::vector<EntityId>& b) {
  std::vector<EntityId> out;
  for (EntityId e : a)
    if (!memberLeq(kb, spec, {e}, b)) out.push_back(e);
  return out;
}

Rational similarity(const KnowledgeBase& kb, const PreorderSpec& spec,
                    const std::vector<EntityId>& a, const std::vector<EntityId>& b) {
  if (memberLeq(kb, spec, a, b) || memberLeq(kb, spec, b, a)) return Rational::one();
  std::vector<EntityId> diff = ssd(kb, spec, a, b);
  std::vector<EntityId> d2 = ssd(kb, spec, b, a);
  diff.insert(diff.end(), d2.begin(), d2.end());
  std::sort(diff.begin(), diff.end());
  diff.erase(std::unique(diff.begin(), diff.end()), diff.end());

  std::vector<EntityId> all = a;
  all.insert(all.end(), b.begin(), b.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  // Incomparable sets are never both empty, so the denominator is positive.
  return Rational(static_cast<std::int64_t>(all.size() - diff.size()),
                  static_cast<std::int64_t>(all.size()));
}

namespace {

// Rules 1-5 in priority order over an evaluation context. The context hides
// whether comparisons are computed directly or via the pooled memo tables.
template <typename Ctx>
std::optional<PairVerdict> evalRules(Ctx& ctx) {
  const std::size_t n = ctx.nArgs();

  bool all = true;
  for (std::size_t i = 0; i < n && all; ++i) all = ctx.argEqual(i);
  if (all) return PairVerdict{RelatednessLevel::Identical, false, 1};

  all = true;
  for (std::size_t i = 0; i < n && all; ++i) all = ctx.leq12(i) && ctx.leq21(i);
  if (all) return PairVerdict{RelatednessLevel::Equivalent, false, 2};

  all = true;
  for (std::size_t i = 0; i < n && all; ++i) all = ctx.leq12(i);
  if (all) return PairVerdict{RelatednessLevel::MoreSpecific, false, 3};
  all = true;
  for (std::size_t i = 0; i < n && all; ++i) all = ctx.leq21(i);
  if (all) return PairVerdict{RelatednessLevel::MoreSpecific, true, 3};

  all = true;
  for (std::size_t i = 0; i < n && all; ++i)
    all = ctx.argEqual(i) || (!ctx.argUnknown2(i) && ctx.leq12(i)) ||
          (!ctx.argUnknown1(i) && ctx.leq21(i));
  if (all) return PairVerdict{RelatednessLevel::ArgComparable, false, 4};

  const GammaConfig& g = ctx.gammas();
  int both_specified = 0, exact_ones = 0;
  bool all_above = true;
  for (std::size_t k = 0; k < ctx.nBlocks(); ++k) {
    if (ctx.blockUnknown1(k) || ctx.blockUnknown2(k)) continue;
    ++both_specified;
    Rational s = ctx.blockSim(k);
    if (s < g.sim) all_above = false;
    if (s == Rational::one()) ++exact_ones;
  }
  if (both_specified >= g.unknown && (all_above || exact_ones >= g.comp))
    return PairVerdict{RelatednessLevel::WeaklyRelated, false, 5};

  return std::nullopt;
}

// Direct evaluation on two records; used by matchPair.
struct DirectCtx {
  const KnowledgeBase& kb;
  const ResolvedConfig& rc;
  const TupleRecord& t1;
  const TupleRecord& t2;
  std::vector<ArgumentValue> b1, b2;

  std::size_t nArgs() const { return rc.arguments.size(); }
  std::size_t nBlocks() const { return rc.blocks.size(); }
  bool argEqual(std::size_t i) const { return t1.args[i] == t2.args[i]; }
  bool argUnknown1(std::size_t i) const { return t1.args[i].isUnknown(); }
  bool argUnknown2(std::size_t i) const { return t2.args[i].isUnknown(); }
  bool leq12(std::size_t i) const { return argLeq(kb, rc.argSpec(i), t1.args[i], t2.args[i]); }
  bool leq21(std::size_t i) const { return argLeq(kb, rc.argSpec(i), t2.args[i], t1.args[i]); }
  bool blockUnknown1(std::size_t k) const { return b1[k].isUnknown(); }
  bool blockUnknown2(std::size_t k) const { return b2[k].isUnknown(); }
  Rational blockSim(std::size_t k) const {
    return similarity(kb, rc.blockSpec(k), b1[k].get(), b2[k].get());
  }
  const GammaConfig& gammas() const { return rc.cfg.gammas; }
};

// Deduplicated argument and aggregate values across all tuples. Value id 0
// is always the unknown marker.
struct ValuePool {
  std::vector<ArgumentValue> values;
  std::map<std::pair<bool, std::vector<EntityId>>, std::uint32_t> index;

  ValuePool() { values.push_back(ArgumentValue::unknown()); }

  std::uint32_t intern(const ArgumentValue& v) {
    if (v.isUnknown()) return 0;
    auto key = std::make_pair(false, v.get());
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    std::uint32_t id = static_cast<std::uint32_t>(values.size());
    values.push_back(v);
    index.emplace(std::move(key), id);
    return id;
  }
};

// Per-worker memoized evaluation over pooled value ids.
struct PoolCtx {
  const KnowledgeBase& kb;
  const ResolvedConfig& rc;
  const std::vector<ArgumentValue>& values;
  const std::uint32_t* args1 = nullptr;
  const std::uint32_t* args2 = nullptr;
  const std::uint32_t* blocks1 = nullptr;
  const std::uint32_t* blocks2 = nullptr;
  std::unordered_map<std::uint64_t, bool>& leq_memo;
  std::unordered_map<std::uint64_t, Rational>& sim_memo;

  // Caps keep the per-worker tables bounded on adversarial inputs where most
  // value pairs are distinct; entries past the cap are recomputed instead.
  static constexpr std::size_t kMemoCap = 1u << 20;

  static std::uint64_t key(std::uint32_t spec, std::uint32_t a, std::uint32_t b) {
    return (static_cast<std::uint64_t>(spec) << 48) | (static_cast<std::uint64_t>(a) << 24) | b;
  }

  bool leqValues(std::uint32_t spec, std::uint32_t a, std::uint32_t b) {
    if (b == 0) return true;   // everything is at or below unknown
    if (a == 0) return false;  // unknown is below nothing specified
    std::uint64_t k = key(spec, a, b);
    auto it = leq_memo.find(k);
    if (it != leq_memo.end()) return it->second;
    bool r = memberLeq(kb, rc.specs[spec], values[a].get(), values[b].get());
    if (leq_memo.size() < kMemoCap) leq_memo.emplace(k, r);
    return r;
  }

  std::size_t nArgs() const { return rc.arguments.size(); }
  std::size_t nBlocks() const { return rc.blocks.size(); }
  bool argEqual(std::size_t i) const { return args1[i] == args2[i]; }
  bool argUnknown1(std::size_t i) const { return args1[i] == 0; }
  bool argUnknown2(std::size_t i) const { return args2[i] == 0; }
  bool leq12(std::size_t i) { return leqValues(rc.arguments[i].spec_id, args1[i], args2[i]); }
  bool leq21(std::size_t i) { return leqValues(rc.arguments[i].spec_id, args2[i], args1[i]); }
  bool blockUnknown1(std::size_t k) const { return blocks1[k] == 0; }
  bool blockUnknown2(std::size_t k) const { return blocks2[k] == 0; }
  Rational blockSim(std::size_t k) {
    std::uint32_t a = blocks1[k], b = blocks2[k];
    if (a > b) std::swap(a, b);  // similarity is symmetric
    std::uint64_t kk = key(rc.blocks[k].spec_id, a, b);
    auto it = sim_memo.find(kk);
    if (it != sim_memo.end()) return it->second;
    Rational r = similarity(kb, rc.specs[rc.blocks[k].spec_id], values[blocks1[k]].get(),
                            values[blocks2[k]].get());
    if (sim_memo.size() < kMemoCap) sim_memo.emplace(kk, r);
    return r;
  }
  const GammaConfig& gammas() const { return rc.cfg.gammas; }
};

bool linkLess(const MatchLink& x, const MatchLink& y) {
  if (x.origin != y.origin) return x.origin < y.origin;
  if (x.destination != y.destination) return x.destination < y.destination;
  return static_cast<int>(x.level) < static_cast<int>(y.level);
}

}  // namespace

std::optional<PairVerdict> matchPair(const KnowledgeBase& kb, const ResolvedConfig& rc,
                                     const TupleRecord& t1, const TupleRecord& t2) {
  DirectCtx ctx{kb, rc, t1, t2, aggregateAll(kb, rc, t1), aggregateAll(kb, rc, t2)};
  return evalRules(ctx);
}

std::vector<MatchLink> closeTransitive(std::vector<MatchLink> links) {
  for (RelatednessLevel level : {RelatednessLevel::Identical, RelatednessLevel::Equivalent,
                                 RelatednessLevel::MoreSpecific}) {
    std::unordered_map<std::string, std::uint32_t> node_of;
    std::vector<const std::string*> iris;
    auto nodeOf = [&](const std::string& iri) {
      auto [it, inserted] = node_of.emplace(iri, static_cast<std::uint32_t>(iris.size()));
      if (inserted) iris.push_back(&it->first);
      return it->second;
    };
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (const MatchLink& l : links)
      if (l.level == level) edges.emplace_back(nodeOf(l.origin), nodeOf(l.destination));
    if (edges.empty()) continue;

    const std::uint32_t n = static_cast<std::uint32_t>(iris.size());
    std::vector<std::vector<std::uint32_t>> adj(n);
    std::unordered_set<std::uint64_t> have;
    for (auto [a, b] : edges) {
      adj[a].push_back(b);
      have.insert((static_cast<std::uint64_t>(a) << 32) | b);
    }

    std::vector<std::uint32_t> queue;
    std::vector<bool> seen(n);
    for (std::uint32_t s = 0; s < n; ++s) {
      if (adj[s].empty()) continue;
      std::fill(seen.begin(), seen.end(), false);
      queue.clear();
      seen[s] = true;
      queue.push_back(s);
      for (std::size_t qi = 0; qi < queue.size(); ++qi)
        for (std::uint32_t w : adj[queue[qi]])
          if (!seen[w]) {
            seen[w] = true;
            queue.push_back(w);
          }
      for (std::uint32_t w = 0; w < n; ++w) {
        if (!seen[w] || w == s) continue;
        if (have.count((static_cast<std::uint64_t>(s) << 32) | w)) continue;
        links.push_back({*iris[s], *iris[w], level, ruleNumber(level), true});
      }
    }
  }
  std::sort(links.begin(), links.end(), linkLess);
  return links;
}

MatchResult matchAll(const KnowledgeBase& kb, const ResolvedConfig& rc,
                     const std::vector<TupleRecord>& tuples, unsigned threads,
                     std::vector<std::string>* warnings) {
  auto started = std::chrono::steady_clock::now();
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());

  MatchResult result;
  const std::size_t n = tuples.size();
  result.report.tuple_count = n;
  result.report.pair_count = n < 2 ? 0 : static_cast<std::uint64_t>(n) * (n - 1) / 2;
  result.report.workers = (threads <= 1 || n < 2) ? 1 : threads;
  result.report.config_digest = rc.cfg.digest();

  const std::size_t n_args = rc.arguments.size();
  const std::size_t n_blocks = rc.blocks.size();

  // Pool all argument and aggregate values; pairs then compare small ids and
  // every distinct comparison is computed at most once per worker.
  ValuePool pool;
  std::vector<std::uint32_t> arg_vids(n * n_args);
  std::vector<std::uint32_t> block_vids(n * n_blocks);
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t i = 0; i < n_args; ++i)
      arg_vids[t * n_args + i] = pool.intern(tuples[t].args[i]);
    std::vector<ArgumentValue> aggs = aggregateAll(kb, rc, tuples[t], warnings);
    for (std::size_t k = 0; k < n_blocks; ++k)
      block_vids[t * n_blocks + k] = pool.intern(aggs[k]);
  }

  struct RowEntry {
    std::uint32_t j;
    PairVerdict verdict;
  };
  std::vector<std::vector<RowEntry>> rows(n);

  std::atomic<std::size_t> next_row{0};
  std::mutex failure_mutex;
  std::exception_ptr failure;

  auto worker = [&]() {
    std::unordered_map<std::uint64_t, bool> leq_memo;
    std::unordered_map<std::uint64_t, Rational> sim_memo;
    try {
      for (std::size_t i = next_row.fetch_add(1); i < n; i = next_row.fetch_add(1)) {
        auto& row = rows[i];
        for (std::size_t j = i + 1; j < n; ++j) {
          PoolCtx ctx{kb,
                      rc,
                      pool.values,
                      &arg_vids[i * n_args],
                      &arg_vids[j * n_args],
                      n_blocks ? &block_vids[i * n_blocks] : nullptr,
                      n_blocks ? &block_vids[j * n_blocks] : nullptr,
                      leq_memo,
                      sim_memo};
          if (auto verdict = evalRules(ctx))
            row.push_back({static_cast<std::uint32_t>(j), *verdict});
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };

  if (threads <= 1 || n < 2) {
    worker();
  } else {
    std::vector<std::thread> pool_threads;
    for (unsigned w = 0; w < threads; ++w) pool_threads.emplace_back(worker);
    for (auto& th : pool_threads) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  for (std::size_t i = 0; i < n; ++i) {
    for (const RowEntry& e : rows[i]) {
      const TupleRecord& ti = tuples[i];
      const TupleRecord& tj = tuples[e.j];
      const PairVerdict& v = e.verdict;
      if (v.level == RelatednessLevel::MoreSpecific) {
        const TupleRecord& origin = v.swapped ? tj : ti;
        const TupleRecord& dest = v.swapped ? ti : tj;
        result.links.push_back({kb.iri(origin.id), kb.iri(dest.id), v.level, v.rule, false});
      } else {
        result.links.push_back({kb.iri(ti.id), kb.iri(tj.id), v.level, v.rule, false});
        result.links.push_back({kb.iri(tj.id), kb.iri(ti.id), v.level, v.rule, false});
      }
    }
  }

  if (rc.cfg.output.transitive_closure)
    result.links = closeTransitive(std::move(result.links));
  else
    std::sort(result.links.begin(), result.links.end(), linkLess);

  std::unordered_map<std::string, const std::string*> source_of;
  for (const TupleRecord& t : tuples) source_of.emplace(kb.iri(t.id), &t.source);
  static const std::string kUnknown = "unknown";
  auto sourceOf = [&](const std::string& iri) -> const std::string& {
    auto it = source_of.find(iri);
    return it == source_of.end() ? kUnknown : *it->second;
  };
  for (const MatchLink& l : result.links) {
    result.matrix.add(l.rule, sourceOf(l.origin), sourceOf(l.destination));
    ++result.report.links_per_rule[static_cast<std::size_t>(l.level)];
  }

  result.report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

}  // namespace kbmatch
