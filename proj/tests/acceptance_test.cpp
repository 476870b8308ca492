// Acceptance gate: every criterion prints exactly one [PASS]/[FAIL] line.
// Exit code is the number of failed criteria.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "kbmatch/config.hpp"
#include "kbmatch/io.hpp"
#include "kbmatch/kb.hpp"
#include "kbmatch/preorder.hpp"
#include "kbmatch/rules.hpp"
#include "kbmatch/testkit.hpp"
#include "kbmatch/tuples.hpp"

using namespace kbmatch;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

// Runs one criterion: fn returns true on success and may leave detail text.
void criterion(const std::string& name, const std::function<bool(std::string&)>& fn) {
  std::string detail;
  bool ok = false;
  auto t0 = std::chrono::steady_clock::now();
  try {
    ok = fn(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("[%s] %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", name.c_str(), secs,
              detail.empty() ? "" : " — ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

std::string expand(const std::string& name) {
  return name.find(':') == std::string::npos ? "http://example.org/t#" + name : name;
}

KnowledgeBase loadText(const std::string& compact, LoadOptions opts = {}) {
  std::ostringstream nt;
  std::istringstream lines(compact);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string s, p, o;
    ls >> s >> p >> o;
    if (p == "a") p = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
    if (p == "sub") p = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
    if (p == "subp") p = "http://www.w3.org/2000/01/rdf-schema#subPropertyOf";
    if (p == "same") p = "http://www.w3.org/2002/07/owl#sameAs";
    nt << '<' << expand(s) << "> <" << expand(p) << "> <" << expand(o) << "> .\n";
  }
  std::istringstream in(nt.str());
  return loadKb(in, opts);
}

std::vector<EntityId> mem(const KnowledgeBase& kb, std::initializer_list<const char*> names) {
  std::vector<EntityId> out;
  for (const char* n : names) out.push_back(kb.canonical(kb.require(expand(n))));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---- criterion 1: the part-of ordering fixtures -----------------------------

bool partOfFixtures(std::string& detail) {
  auto t0 = std::chrono::steady_clock::now();
  LoadOptions opts;
  opts.reflexive_transitive_predicates = {expand("partOf")};
  auto kb = loadText(
      "e1 a E\n"
      "e2 a E\n"
      "e3 a E\n"
      "e3 partOf e1\n",
      opts);
  EntityId p = kb.require(expand("partOf"));
  auto leq = [&](std::initializer_list<const char*> a, std::initializer_list<const char*> b) {
    return linkLeq(kb, p, mem(kb, a), mem(kb, b));
  };
  bool ok = leq({"e1"}, {"e1", "e2"}) && leq({"e3", "e2"}, {"e1", "e2"}) &&
            leq({"e3"}, {"e1", "e2"}) && leq({"e3", "e1"}, {"e1"}) && leq({"e1"}, {"e3", "e1"});
  if (!ok) detail = "a pinned ordering verdict flipped";
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (ok && secs >= 1.0) {
    detail = "verdicts right but took " + std::to_string(secs) + "s (budget 1s)";
    ok = false;
  }
  return ok;
}

// ---- criterion 2: the six type-ordering shapes -------------------------------

bool typeOrderingShapes(std::string& detail) {
  struct Case {
    const char* name;
    const char* kb;
    std::initializer_list<const char*> a;
    std::initializer_list<const char*> b;
    bool fwd, rev;
  };
  const Case cases[] = {
      {"chain finds a more general home",
       "C sub B\nB sub A\ne1 a B\ne2 a A\ne3 a C\n",
       {"e1"}, {"e2", "e3"}, true, false},
      {"each minimal class finds its own home",
       "Y sub Z\ne1 a X\ne1 a Y\ne2 a X\ne3 a Z\n",
       {"e1"}, {"e2", "e3"}, true, false},
      {"an incomparable bystander does not block",
       "B sub A\ne1 a B\ne2 a A\ne3 a Q\n",
       {"e1"}, {"e2", "e3"}, true, false},
      {"one individual covers several minimal classes",
       "B sub A\ne1 a B\ne2 a A\ne2 a Q\n",
       {"e1"}, {"e2"}, true, false},
      {"an uncovered minimal class blocks both ways",
       "B sub A\ne1 a B\ne1 a P\ne2 a A\n",
       {"e1"}, {"e2"}, false, false},
      {"equal most specific classes order both ways",
       "B sub A\ne1 a B\ne2 a B\n",
       {"e1"}, {"e2"}, true, true},
  };
  for (const Case& c : cases) {
    auto kb = loadText(c.kb);
    auto view = kb.allClassesView();
    bool fwd = ontoLeq(kb, view, mem(kb, c.a), mem(kb, c.b));
    bool rev = ontoLeq(kb, view, mem(kb, c.b), mem(kb, c.a));
    if (fwd != c.fwd || rev != c.rev) {
      detail = std::string("case '") + c.name + "' returned (" + (fwd ? "true" : "false") + ", " +
               (rev ? "true" : "false") + ")";
      return false;
    }
  }
  return true;
}

// ---- criterion 3: untyped incomparability and the universal-class switch -----

bool untypedGuard(std::string& detail) {
  auto kb = loadText(
      "Pain sub http://www.w3.org/2002/07/owl#Thing\n"
      "Headache sub Pain\n"
      "pain a Pain\n"
      "headache noise pain\n");
  auto h = mem(kb, {"headache"});
  auto p = mem(kb, {"pain"});

  auto view = kb.allClassesView();
  if (ontoLeq(kb, view, h, p) || ontoLeq(kb, view, p, h)) {
    detail = "the untyped pair failed to be incomparable";
    return false;
  }
  // counting the universal class as an instantiated class manufactures the
  // unjustified "untyped side is more general" verdict
  auto with_top = kb.allClassesView("all", /*include_top=*/true);
  if (!ontoLeq(kb, with_top, p, h) || ontoLeq(kb, with_top, h, p)) {
    detail = "the universal-class switch did not produce the expected wrong verdict";
    return false;
  }
  return true;
}

// ---- criterion 4: the bundled two-tuple example through the binary ------------

bool bundledExample(std::string& detail) {
  fs::path dir = fs::temp_directory_path() / "kbmatch_acceptance" / "pgx";
  fs::remove_all(dir);
  fs::create_directories(dir);
  fs::path kb = fs::path(KBMATCH_DATA_DIR) / "pgx" / "kb.nt";
  fs::path cfg = fs::path(KBMATCH_DATA_DIR) / "pgx" / "config.json";
  fs::path links = dir / "links.nt";

  std::string cmd = std::string("'") + KBMATCH_CLI_PATH + "' match --kb '" + kb.string() +
                    "' --config '" + cfg.string() + "' --out '" + links.string() + "' >'" +
                    (dir / "stdout").string() + "' 2>'" + (dir / "stderr").string() + "'";
  int status = std::system(cmd.c_str());
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    detail = "matcher exited with " + std::to_string(WIFEXITED(status) ? WEXITSTATUS(status) : -1);
    return false;
  }
  std::string got = slurp(links);
  std::string want =
      "<http://example.org/pgx#pgt1> <http://www.w3.org/2004/02/skos/core#broadMatch> "
      "<http://example.org/pgx#pgt2> .\n";
  if (got != want) {
    detail = "link file holds " + std::to_string(std::count(got.begin(), got.end(), '\n')) +
             " line(s), expected the single directional link";
    return false;
  }
  return true;
}

// ---- criterion 5: ordering laws on random knowledge bases ---------------------

bool orderingLaws(std::string& detail) {
  long long violations = 0;
  Rng rng(4242);
  for (int round = 0; round < 200; ++round) {
    int nc = 3 + static_cast<int>(rng.below(13));  // <= 15 classes
    int ni = 5 + static_cast<int>(rng.below(26));  // <= 30 individuals
    std::ostringstream text;
    auto cls = [](int i) { return expand("C" + std::to_string(i)); };
    auto ind = [](int i) { return expand("x" + std::to_string(i)); };
    auto emit = [&](const std::string& s, const std::string& p, const std::string& o) {
      text << '<' << s << "> <" << p << "> <" << o << "> .\n";
    };
    const std::string kType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
    const std::string kSub = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
    const std::string kSame = "http://www.w3.org/2002/07/owl#sameAs";
    const std::string kTop = "http://www.w3.org/2002/07/owl#Thing";

    emit(cls(0), kSub, kTop);
    emit(cls(1), kSub, kTop);
    for (int i = 2; i < nc; ++i) {
      emit(cls(i), kSub, cls(static_cast<int>(rng.below(static_cast<std::uint64_t>(i)))));
      if (rng.chance(0.3))
        emit(cls(i), kSub, cls(static_cast<int>(rng.below(static_cast<std::uint64_t>(i)))));
    }
    for (int i = 0; i < ni; ++i) {
      if (rng.chance(0.75)) {
        emit(ind(i), kType, cls(static_cast<int>(rng.below(static_cast<std::uint64_t>(nc)))));
        if (rng.chance(0.3))
          emit(ind(i), kType, cls(static_cast<int>(rng.below(static_cast<std::uint64_t>(nc)))));
      } else {
        emit(ind(i), expand("noise"), ind(0));
      }
      if (i > 0 && rng.chance(0.1))
        emit(ind(i), kSame, ind(static_cast<int>(rng.below(static_cast<std::uint64_t>(i)))));
    }
    for (int i = 0; i < ni; ++i)
      for (int j = 0; j < ni; ++j)
        if (i != j && rng.chance(0.08)) emit(ind(i), expand("lp"), ind(j));

    LoadOptions opts;
    opts.reflexive_transitive_predicates = {expand("lp")};
    std::istringstream in(text.str());
    auto kb = loadKb(in, opts);

    OntologyView view = kb.makeView("v", {cls(0)});
    PreorderSpec subset_spec;
    PreorderSpec link_spec;
    link_spec.kind = PreorderSpec::Kind::Link;
    link_spec.predicate_iri = expand("lp");
    link_spec.predicate = kb.lookup(expand("lp"));
    PreorderSpec onto_spec;
    onto_spec.kind = PreorderSpec::Kind::Ontology;
    onto_spec.view = &view;
    const PreorderSpec specs[] = {subset_spec, link_spec, onto_spec};

    std::vector<ArgumentValue> pool;
    pool.push_back(ArgumentValue::unknown());
    pool.push_back(ArgumentValue::members({}));
    for (int k = 0; k < 8; ++k) {
      std::vector<EntityId> ms;
      std::size_t sz = 1 + rng.below(3);
      for (std::size_t s = 0; s < sz; ++s)
        ms.push_back(kb.canonical(
            kb.require(ind(static_cast<int>(rng.below(static_cast<std::uint64_t>(ni)))))));
      pool.push_back(ArgumentValue::members(std::move(ms)));
    }

    for (const PreorderSpec& spec : specs) {
      for (const auto& v : pool)
        if (!argLeq(kb, spec, v, v)) ++violations;  // reflexivity
      for (const auto& a : pool)
        for (const auto& b : pool) {
          if (!a.isUnknown() && !b.isUnknown() &&
              std::includes(b.get().begin(), b.get().end(), a.get().begin(), a.get().end()) &&
              !memberLeq(kb, spec, a.get(), b.get()))
            ++violations;  // set inclusion implies ordering
          if (!argLeq(kb, spec, a, b)) continue;
          for (const auto& c : pool)
            if (argLeq(kb, spec, b, c) && !argLeq(kb, spec, a, c)) ++violations;  // transitivity
        }
    }
  }
  if (violations) detail = std::to_string(violations) + " law violation(s)";
  return violations == 0;
}

// ---- criterion 6: rule laws on random instances -------------------------------

bool ruleLaws(std::string& detail) {
  long long violations = 0;
  for (int i = 0; i < 100; ++i) {
    GeneratorParams p;
    p.seed = 2000 + static_cast<std::uint64_t>(i);
    p.n_tuples = 12 + i % 9;
    p.n_individuals = 50;
    p.n_classes = 15;
    auto inst = generate(p);
    std::istringstream in(inst.kb_text);
    auto kb = loadKb(in, inst.config.loadOptions());
    auto rc = ResolvedConfig::resolve(kb, inst.config);
    auto tuples = extractTuples(kb, rc);
    auto result = matchAll(kb, rc, tuples, 2);

    // at most one level per pair among the rule firings
    std::map<std::pair<std::string, std::string>, std::set<RelatednessLevel>> direct;
    for (const MatchLink& l : result.links) {
      if (l.induced) continue;
      auto key = l.origin < l.destination ? std::make_pair(l.origin, l.destination)
                                          : std::make_pair(l.destination, l.origin);
      direct[key].insert(l.level);
    }
    for (const auto& [key, levels] : direct)
      if (levels.size() > 1) ++violations;

    std::set<std::pair<std::string, std::string>> more_specific;
    for (const MatchLink& l : result.links)
      if (l.level == RelatednessLevel::MoreSpecific) more_specific.insert({l.origin, l.destination});
    for (const MatchLink& l : result.links) {
      if (l.origin == l.destination) ++violations;  // no self links at all
      if (l.level == RelatednessLevel::MoreSpecific) {
        if (more_specific.count({l.destination, l.origin})) ++violations;  // no two-way narrowing
      } else {
        bool mirrored = false;
        for (const MatchLink& m : result.links)
          if (m.level == l.level && m.origin == l.destination && m.destination == l.origin)
            mirrored = true;
        if (!mirrored) ++violations;  // symmetric levels mirrored
      }
    }

    for (std::size_t t = 0; t < tuples.size(); t += 5) {
      auto self = matchPair(kb, rc, tuples[t], tuples[t]);
      if (!self || self->level != RelatednessLevel::Identical) ++violations;
    }

    // raising the similarity thresholds can only remove weak links
    MatchingConfig tighter = inst.config;
    tighter.gammas.sim = Rational::one();
    tighter.gammas.comp = static_cast<int>(tighter.partition.size());
    auto rc2 = ResolvedConfig::resolve(kb, tighter);
    auto result2 = matchAll(kb, rc2, tuples, 2);
    std::set<std::pair<std::string, std::string>> weak_base;
    for (const MatchLink& l : result.links)
      if (l.level == RelatednessLevel::WeaklyRelated) weak_base.insert({l.origin, l.destination});
    for (const MatchLink& l : result2.links)
      if (l.level == RelatednessLevel::WeaklyRelated && !weak_base.count({l.origin, l.destination}))
        ++violations;
  }
  if (violations) detail = std::to_string(violations) + " law violation(s)";
  return violations == 0;
}

// ---- criterion 7: engine vs reference semantics --------------------------------

bool referenceEquivalence(std::string& detail) {
  auto t0 = std::chrono::steady_clock::now();
  const int sizes[] = {30, 45, 60, 80, 100};
  for (int i = 0; i < 100; ++i) {
    GeneratorParams p;
    p.seed = 9000 + static_cast<std::uint64_t>(i);
    p.n_tuples = sizes[i % 5];
    p.n_individuals = 2 * p.n_tuples;
    p.n_classes = 18;
    p.link_density = 0.05;
    auto inst = generate(p);
    std::istringstream in(inst.kb_text);
    auto kb = loadKb(in, inst.config.loadOptions());
    auto rc = ResolvedConfig::resolve(kb, inst.config);
    auto tuples = extractTuples(kb, rc);

    auto engine = matchAll(kb, rc, tuples, 2);
    auto reference = oracleMatch(kb, inst.config, tuples);
    if (engine.links != reference) {
      detail = "instance seed " + std::to_string(p.seed) + " diverged (engine " +
               std::to_string(engine.links.size()) + " links, reference " +
               std::to_string(reference.size()) + ")";
      return false;
    }
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs >= 300.0) {
    detail = "equivalence held but took " + std::to_string(secs) + "s (budget 300s)";
    return false;
  }
  return true;
}

// ---- criterion 8: scale smoke and worker determinism ----------------------------

bool scaleSmoke(std::string& detail) {
  GeneratorParams p;
  p.seed = 8080;
  p.n_tuples = 2000;
  p.n_individuals = 500;
  p.n_classes = 24;
  p.link_density = 0.02;
  p.sameas_density = 0.02;
  p.n_sources = 3;

  auto t0 = std::chrono::steady_clock::now();
  auto inst = generate(p);
  std::istringstream in(inst.kb_text);
  auto kb = loadKb(in, inst.config.loadOptions());
  auto rc = ResolvedConfig::resolve(kb, inst.config);
  auto tuples = extractTuples(kb, rc, 4);

  // results hold ~2M links; keep at most one alive at a time
  std::size_t n_links = 0;
  {
    auto r4 = matchAll(kb, rc, tuples, 4);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= 60.0) {
      detail = "4-worker run took " + std::to_string(secs) + "s (budget 60s)";
      return false;
    }
    if (r4.report.pair_count != 1999000ull) {
      detail = "unexpected pair count " + std::to_string(r4.report.pair_count);
      return false;
    }
    n_links = r4.links.size();
  }

  std::string bytes1;
  SourceMatrix matrix1;
  {
    auto r1 = matchAll(kb, rc, tuples, 1);
    std::ostringstream ss;
    writeLinks(ss, r1.links);
    bytes1 = std::move(ss).str();
    matrix1 = std::move(r1.matrix);
  }
  auto r8 = matchAll(kb, rc, tuples, 8);
  std::ostringstream bytes8;
  writeLinks(bytes8, r8.links);
  if (bytes1 != bytes8.str() || matrix1.cells != r8.matrix.cells) {
    detail = "1-worker and 8-worker outputs differ";
    return false;
  }
  detail = std::to_string(n_links) + " links";
  return true;
}

// ---- criterion 9: similarity arithmetic ------------------------------------------

bool similarityArithmetic(std::string& detail) {
  auto kb = loadText(
      "a a M\n"
      "b a M\n"
      "c a M\n");
  PreorderSpec subset;
  bool ok = similarity(kb, subset, mem(kb, {"a"}), mem(kb, {"a", "b"})) == Rational::one() &&
            similarity(kb, subset, mem(kb, {"a"}), mem(kb, {"b"})) == Rational::zero() &&
            similarity(kb, subset, mem(kb, {"a", "b"}), mem(kb, {"a", "c"})) == Rational(1, 3);
  if (!ok) detail = "a pinned similarity value is off";
  return ok;
}

}  // namespace

int main() {
  criterion("part-of ordering fixtures return the pinned verdicts", partOfFixtures);
  criterion("type ordering reproduces the six canonical shapes", typeOrderingShapes);
  criterion("untyped members stay incomparable unless the universal class is counted",
            untypedGuard);
  criterion("bundled example emits exactly one directional link", bundledExample);
  criterion("ordering laws hold on 200 random knowledge bases", orderingLaws);
  criterion("rule laws hold on 100 random instances", ruleLaws);
  criterion("engine equals reference semantics on 100 instances", referenceEquivalence);
  criterion("2000-tuple run fits the time budget and is worker-independent", scaleSmoke);
  criterion("similarity arithmetic is exact", similarityArithmetic);
  return g_failures;
}
