#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <sstream>

#include "kbmatch/errors.hpp"
#include "kbmatch/kb.hpp"
#include "kbmatch/ntriples.hpp"
#include "kbmatch/testkit.hpp"
#include "support.hpp"

using namespace kbmatch;
using kbtest::expand;
using kbtest::loadCompact;

TEST_CASE("triple parser accepts the line-oriented form") {
  std::istringstream in(
      "# comment\n"
      "\n"
      "<http://a#s> <http://a#p> <http://a#o> .\n"
      "  <http://a#x>\t<http://a#p>  <http://a#y> .  \n");
  std::vector<std::size_t> lines;
  auto ts = readNTriples(in, &lines);
  REQUIRE(ts.size() == 2);
  CHECK(ts[0].subject == "http://a#s");
  CHECK(ts[1].object == "http://a#y");
  CHECK(lines == std::vector<std::size_t>{3, 4});
}

TEST_CASE("triple parser rejects malformed lines with their line number") {
  auto bad = [](const std::string& text) {
    std::istringstream in(text);
    try {
      readNTriples(in);
      return std::size_t{0};
    } catch (const ParseError& e) {
      return std::string(e.what()).find("line ") != std::string::npos ? e.line() : std::size_t{0};
    }
  };
  CHECK(bad("<http://a#s> <http://a#p> <http://a#o>\n") == 1);           // no dot
  CHECK(bad("\n<http://a#s> <http://a#p> .\n") == 2);                    // missing object
  CHECK(bad("<http://a#s> <http://a#p> <http://a #o> .\n") == 1);        // space in IRI
  CHECK(bad("<http://a#s> <http://a#p> \"lit\" .\n") == 1);              // literal
  CHECK(bad("<noscheme> <http://a#p> <http://a#o> .\n") == 1);           // no colon
}

TEST_CASE("triple format round-trips") {
  Triple t{"http://a#s", "http://a#p", "http://a#o"};
  std::istringstream in(formatTriple(t) + "\n");
  auto ts = readNTriples(in);
  REQUIRE(ts.size() == 1);
  CHECK(ts[0].subject == t.subject);
  CHECK(ts[0].predicate == t.predicate);
  CHECK(ts[0].object == t.object);
}

TEST_CASE("roles follow statement positions") {
  auto kb = loadCompact(
      "e1 a C\n"
      "C sub D\n"
      "p subp q\n"
      "e1 r e2\n");
  CHECK(kb.isIndividual(kb.require(expand("e1"))));
  CHECK(kb.isClass(kb.require(expand("C"))));
  CHECK(kb.isClass(kb.require(expand("D"))));
  CHECK(kb.isPredicate(kb.require(expand("p"))));
  CHECK(kb.isPredicate(kb.require(expand("q"))));
  CHECK(kb.isPredicate(kb.require(expand("r"))));
  CHECK(kb.isIndividual(kb.require(expand("e2"))));
  CHECK(kb.lookup("http://nowhere#x") == kNoEntity);
  CHECK_THROWS_AS(kb.require("http://nowhere#x"), LookupError);
}

TEST_CASE("identity statements merge onto the least name") {
  auto kb = loadCompact(
      "b same c\n"
      "c same a\n"
      "a a C\n"
      "b a D\n"
      "C sub T\n"
      "D sub T\n");
  EntityId a = kb.require(expand("a"));
  EntityId b = kb.require(expand("b"));
  EntityId c = kb.require(expand("c"));
  CHECK(kb.canonical(a) == a);
  CHECK(kb.canonical(b) == a);
  CHECK(kb.canonical(c) == a);
  // declared types folded onto the representative
  auto types = kb.declaredTypes(a);
  CHECK(types.size() == 2);
  // individuals() lists only representatives
  for (EntityId e : kb.individuals()) CHECK(kb.canonical(e) == e);
}

TEST_CASE("identity statements may not touch classes or predicates") {
  CHECK_THROWS_AS(loadCompact("e1 a C\nC same e1\n"), ParseError);
  CHECK_THROWS_AS(loadCompact("p subp q\ne1 same p\ne1 r e2\n"), ParseError);
  try {
    loadCompact("e1 a C\nC same e1\n");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("subsumption is reflexive, transitive, and collapses cycles") {
  auto kb = loadCompact(
      "A sub B\n"
      "B sub C\n"
      "X sub Y\n"
      "Y sub X\n"
      "X sub C\n");
  EntityId A = kb.require(expand("A")), B = kb.require(expand("B")), C = kb.require(expand("C"));
  EntityId X = kb.require(expand("X")), Y = kb.require(expand("Y"));
  CHECK(kb.subsumedBy(A, A));
  CHECK(kb.subsumedBy(A, B));
  CHECK(kb.subsumedBy(A, C));
  CHECK_FALSE(kb.subsumedBy(C, A));
  CHECK(kb.strictlySubsumedBy(A, B));
  CHECK_FALSE(kb.strictlySubsumedBy(A, A));
  // X and Y are one group
  CHECK(kb.classGroup(X) == kb.classGroup(Y));
  CHECK(kb.subsumedBy(X, Y));
  CHECK(kb.subsumedBy(Y, X));
  CHECK_FALSE(kb.strictlySubsumedBy(X, Y));
  CHECK(kb.subsumedBy(X, C));
  bool cycle_warned = false;
  for (const auto& w : kb.warnings())
    if (w.find("equivalent classes") != std::string::npos) cycle_warned = true;
  CHECK(cycle_warned);
}

TEST_CASE("instances are entailed through subsumption and identity") {
  auto kb = loadCompact(
      "Sub sub Super\n"
      "e1 a Sub\n"
      "e2 a Super\n"
      "e3 same e1\n");
  EntityId sup = kb.require(expand("Super"));
  auto insts = kb.instancesOf(sup);
  REQUIRE(insts.size() == 2);  // e1 (canonical of {e1,e3}) and e2
  CHECK(kb.instanceOf(kb.require(expand("e3")), sup));
  CHECK(kb.instanceOf(kb.require(expand("e1")), kb.require(expand("Sub"))));
  CHECK_FALSE(kb.instanceOf(kb.require(expand("e2")), kb.require(expand("Sub"))));
  // sorted by id, deterministic
  CHECK(std::is_sorted(insts.begin(), insts.end()));
}

TEST_CASE("linked objects close over the predicate hierarchy, reachability does not") {
  LoadOptions opts;
  opts.reflexive_transitive_predicates = {expand("q")};
  auto kb = loadCompact(
      "p subp q\n"
      "e1 p e2\n"
      "e2 q e3\n",
      opts);
  EntityId e1 = kb.require(expand("e1")), e2 = kb.require(expand("e2")),
           e3 = kb.require(expand("e3"));
  EntityId q = kb.require(expand("q"));
  // hierarchy closure: p-links count as q-links for extraction-style lookups
  auto objs = kb.linkedObjects(e1, q);
  CHECK(objs == std::vector<EntityId>{e2});
  auto subj = kb.linkedSubjects(e3, q);
  CHECK(subj == std::vector<EntityId>{e2});
  // the designated-reachability index sees only exact q edges
  CHECK(kb.pReachable(q, e2, e3));
  CHECK_FALSE(kb.pReachable(q, e1, e2));
  CHECK(kb.pReachable(q, e1, e1));  // reflexive on anything
  CHECK_THROWS_AS(kb.pReachable(kb.require(expand("p")), e1, e2), ConfigError);
}

TEST_CASE("reachability is transitive, follows identity, and survives cycles") {
  LoadOptions opts;
  opts.reflexive_transitive_predicates = {expand("q")};
  auto kb = loadCompact(
      "e1 q e2\n"
      "e2 q e3\n"
      "e3 q e1\n"
      "e4 same e2\n"
      "e5 q e4\n",
      opts);
  EntityId q = kb.require(expand("q"));
  auto r = [&](const char* a, const char* b) {
    return kb.pReachable(q, kb.require(expand(a)), kb.require(expand(b)));
  };
  CHECK(r("e1", "e3"));
  CHECK(r("e3", "e2"));  // around the cycle
  CHECK(r("e5", "e2"));  // through the alias e4
  CHECK(r("e5", "e1"));
  CHECK_FALSE(r("e1", "e5"));
}

TEST_CASE("absent designated predicate warns and degenerates to equality") {
  LoadOptions opts;
  opts.reflexive_transitive_predicates = {expand("ghost")};
  auto kb = loadCompact("e1 r e2\n", opts);
  bool warned = false;
  for (const auto& w : kb.warnings())
    if (w.find("never used") != std::string::npos && w.find(expand("ghost")) != std::string::npos)
      warned = true;
  CHECK(warned);
}

TEST_CASE("views span root classes downward") {
  auto kb = loadCompact(
      "B sub A\n"
      "C sub B\n"
      "Z sub Other\n"
      "e1 a C\n"
      "e2 a Z\n");
  auto view = kb.makeView("v", {expand("A")});
  CHECK(view.member_groups.test(kb.classGroup(kb.require(expand("A")))));
  CHECK(view.member_groups.test(kb.classGroup(kb.require(expand("C")))));
  CHECK_FALSE(view.member_groups.test(kb.classGroup(kb.require(expand("Z")))));
  CHECK_THROWS_AS(kb.makeView("v", {expand("missing")}), ConfigError);
}

TEST_CASE("instantiated classes exclude the universal class by default") {
  LoadOptions opts;  // top defaults to owl:Thing
  auto kb = loadCompact(
      "Pain sub http://www.w3.org/2002/07/owl#Thing\n"
      "Headache sub Pain\n"
      "e1 a Headache\n",
      opts);
  auto all = kb.allClassesView();
  Bitset c = kb.ci(all, kb.require(expand("e1")));
  CHECK(c.test(kb.classGroup(kb.require(expand("Headache")))));
  CHECK(c.test(kb.classGroup(kb.require(expand("Pain")))));
  CHECK_FALSE(c.test(kb.topGroup()));

  auto with_top = kb.allClassesView("all", /*include_top=*/true);
  Bitset c2 = kb.ci(with_top, kb.require(expand("e1")));
  CHECK(c2.test(kb.topGroup()));
  // untyped individuals instantiate only the universal class under the switch
  auto kb2 = loadCompact(
      "Pain sub http://www.w3.org/2002/07/owl#Thing\n"
      "e2 a Pain\n"
      "u r e2\n");
  Bitset cu = kb2.ci(kb2.allClassesView("all", true), kb2.require(expand("u")));
  CHECK(cu.test(kb2.topGroup()));
  std::size_t bits = 0;
  cu.forEach([&](std::size_t) { ++bits; });
  CHECK(bits == 1);
}

TEST_CASE("most specific classes form an antichain") {
  auto kb = loadCompact(
      "B sub A\n"
      "C sub B\n"
      "Q sub A\n"
      "e1 a C\n"
      "e1 a Q\n");
  auto view = kb.allClassesView();
  auto ms = kb.msci(view, kb.require(expand("e1")));
  std::set<GroupId> got(ms.begin(), ms.end());
  CHECK(got == std::set<GroupId>{kb.classGroup(kb.require(expand("C"))),
                                 kb.classGroup(kb.require(expand("Q")))});
  for (GroupId g : ms)
    for (GroupId h : ms)
      if (g != h) CHECK_FALSE(kb.groupSubsumedBy(g, h));
}

TEST_CASE("reachability agrees with plain search on random graphs") {
  Rng rng(2024);
  for (int round = 0; round < 50; ++round) {
    int n = 3 + static_cast<int>(rng.below(10));
    std::ostringstream text;
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && rng.chance(0.2)) {
          edges.push_back({i, j});
          text << "<http://example.org/t#n" << i << "> <" << expand("q")
               << "> <http://example.org/t#n" << j << "> .\n";
        }
    if (edges.empty()) continue;
    LoadOptions opts;
    opts.reflexive_transitive_predicates = {expand("q")};
    std::istringstream in(text.str());
    auto kb = loadKb(in, opts);
    EntityId q = kb.require(expand("q"));

    // reference: DFS over the same edges
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (auto [i, j] : edges) adj[static_cast<std::size_t>(i)].push_back(j);
    auto reach = [&](int s, int t) {
      std::vector<int> stack{s};
      std::set<int> seen{s};
      while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        if (x == t) return true;
        for (int y : adj[static_cast<std::size_t>(x)])
          if (seen.insert(y).second) stack.push_back(y);
      }
      return false;
    };
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        EntityId a = kb.lookup("http://example.org/t#n" + std::to_string(i));
        EntityId b = kb.lookup("http://example.org/t#n" + std::to_string(j));
        if (a == kNoEntity || b == kNoEntity) continue;  // isolated node never appeared
        CHECK(kb.pReachable(q, a, b) == (i == j || reach(i, j)));
      }
  }
}
