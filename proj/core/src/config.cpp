#include "kbmatch/config.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

namespace kbmatch {

namespace {

using nlohmann::json;

void rejectUnknownKeys(const json& j, std::initializer_list<const char*> known,
                       const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : known)
      if (it.key() == k) {
        ok = true;
        break;
      }
    if (!ok) throw ConfigError(where + ": unknown field '" + it.key() + "'");
  }
}

std::string requireString(const json& j, const char* field, const std::string& where) {
  auto it = j.find(field);
  if (it == j.end() || !it->is_string() || it->get<std::string>().empty())
    throw ConfigError(where + ": missing or empty string field '" + field + "'");
  return it->get<std::string>();
}

std::string optString(const json& j, const char* field, const std::string& where,
                      std::string def = {}) {
  auto it = j.find(field);
  if (it == j.end()) return def;
  if (!it->is_string()) throw ConfigError(where + ": field '" + field + "' must be a string");
  return it->get<std::string>();
}

int requireInt(const json& j, const char* field, const std::string& where) {
  auto it = j.find(field);
  if (it == j.end() || !it->is_number_integer())
    throw ConfigError(where + ": missing or non-integer field '" + field + "'");
  return it->get<int>();
}

std::vector<std::string> optStringArray(const json& j, const char* field,
                                        const std::string& where) {
  std::vector<std::string> out;
  auto it = j.find(field);
  if (it == j.end()) return out;
  if (!it->is_array()) throw ConfigError(where + ": field '" + field + "' must be an array");
  for (const auto& e : *it) {
    if (!e.is_string() || e.get<std::string>().empty())
      throw ConfigError(where + ": '" + field + "' entries must be non-empty strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

PreorderConfig parsePreorder(const json& j, const std::string& where) {
  PreorderConfig pc;
  if (j.is_string()) {
    if (j.get<std::string>() == "subset") return pc;
    throw ConfigError(where + ": unknown preorder '" + j.get<std::string>() + "'");
  }
  if (!j.is_object()) throw ConfigError(where + ": preorder must be \"subset\" or an object");
  rejectUnknownKeys(j, {"kind", "predicate", "view"}, where);
  std::string kind = requireString(j, "kind", where);
  if (kind == "subset") {
    pc.kind = PreorderSpec::Kind::Subset;
  } else if (kind == "link") {
    pc.kind = PreorderSpec::Kind::Link;
    pc.predicate = requireString(j, "predicate", where);
  } else if (kind == "ontology") {
    pc.kind = PreorderSpec::Kind::Ontology;
    pc.view = requireString(j, "view", where);
  } else {
    throw ConfigError(where + ": unknown preorder kind '" + kind + "'");
  }
  return pc;
}

json preorderToJson(const PreorderConfig& pc) {
  switch (pc.kind) {
    case PreorderSpec::Kind::Subset:
      return json("subset");
    case PreorderSpec::Kind::Link:
      return json{{"kind", "link"}, {"predicate", pc.predicate}};
    case PreorderSpec::Kind::Ontology:
      return json{{"kind", "ontology"}, {"view", pc.view}};
  }
  return json("subset");
}

}  // namespace

MatchingConfig MatchingConfig::fromJson(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  rejectUnknownKeys(j,
                    {"tuple_class", "source_predicate", "top_class",
                     "reflexive_transitive_predicates", "ontology_views",
                     "closed_marker_predicate", "arguments", "partition", "gammas", "output"},
                    "config");

  MatchingConfig cfg;
  cfg.tuple_class = requireString(j, "tuple_class", "config");
  cfg.source_predicate = optString(j, "source_predicate", "config");
  cfg.top_class = optString(j, "top_class", "config", cfg.top_class);
  cfg.reflexive_transitive_predicates =
      optStringArray(j, "reflexive_transitive_predicates", "config");
  cfg.closed_marker_predicate = optString(j, "closed_marker_predicate", "config");

  if (auto it = j.find("ontology_views"); it != j.end()) {
    if (!it->is_array()) throw ConfigError("config: 'ontology_views' must be an array");
    for (std::size_t k = 0; k < it->size(); ++k) {
      const json& jv = (*it)[k];
      std::string where = "ontology_views[" + std::to_string(k) + "]";
      if (!jv.is_object()) throw ConfigError(where + ": must be an object");
      rejectUnknownKeys(jv, {"name", "roots"}, where);
      ViewConfig vc;
      vc.name = requireString(jv, "name", where);
      vc.roots = optStringArray(jv, "roots", where);
      if (vc.roots.empty()) throw ConfigError(where + ": 'roots' must be a non-empty array");
      cfg.ontology_views.push_back(std::move(vc));
    }
  }

  auto ja = j.find("arguments");
  if (ja == j.end() || !ja->is_array() || ja->empty())
    throw ConfigError("config: 'arguments' must be a non-empty array");
  for (std::size_t k = 0; k < ja->size(); ++k) {
    const json& jarg = (*ja)[k];
    std::string where = "arguments[" + std::to_string(k) + "]";
    if (!jarg.is_object()) throw ConfigError(where + ": must be an object");
    rejectUnknownKeys(jarg, {"index", "role_class", "predicate", "direction", "preorder"}, where);
    ArgumentSchemaConfig a;
    a.index = requireInt(jarg, "index", where);
    a.role_class = requireString(jarg, "role_class", where);
    a.predicate = requireString(jarg, "predicate", where);
    std::string dir = requireString(jarg, "direction", where);
    if (dir == "tuple_to_member")
      a.direction = Direction::TupleToMember;
    else if (dir == "member_to_tuple")
      a.direction = Direction::MemberToTuple;
    else
      throw ConfigError(where + ": direction must be 'tuple_to_member' or 'member_to_tuple'");
    auto jp = jarg.find("preorder");
    if (jp == jarg.end()) throw ConfigError(where + ": missing 'preorder'");
    a.preorder = parsePreorder(*jp, where);
    cfg.arguments.push_back(std::move(a));
  }

  auto jpart = j.find("partition");
  if (jpart == j.end() || !jpart->is_array() || jpart->empty())
    throw ConfigError("config: 'partition' must be a non-empty array");
  for (std::size_t k = 0; k < jpart->size(); ++k) {
    const json& jb = (*jpart)[k];
    std::string where = "partition[" + std::to_string(k) + "]";
    if (!jb.is_object()) throw ConfigError(where + ": must be an object");
    rejectUnknownKeys(jb, {"indices", "preorder", "dependency_predicates"}, where);
    PartitionBlockConfig b;
    auto ji = jb.find("indices");
    if (ji == jb.end() || !ji->is_array() || ji->empty())
      throw ConfigError(where + ": 'indices' must be a non-empty array");
    for (const auto& e : *ji) {
      if (!e.is_number_integer())
        throw ConfigError(where + ": 'indices' entries must be integers");
      b.indices.push_back(e.get<int>());
    }
    auto jp = jb.find("preorder");
    if (jp == jb.end()) throw ConfigError(where + ": missing 'preorder'");
    b.preorder = parsePreorder(*jp, where);
    b.dependency_predicates = optStringArray(jb, "dependency_predicates", where);
    cfg.partition.push_back(std::move(b));
  }

  if (auto it = j.find("gammas"); it != j.end()) {
    if (!it->is_object()) throw ConfigError("config: 'gammas' must be an object");
    rejectUnknownKeys(*it, {"unknown", "sim", "comp"}, "gammas");
    if (it->contains("unknown")) cfg.gammas.unknown = requireInt(*it, "unknown", "gammas");
    if (it->contains("comp")) cfg.gammas.comp = requireInt(*it, "comp", "gammas");
    if (auto js = it->find("sim"); js != it->end()) {
      if (js->is_string())
        cfg.gammas.sim = Rational::fromString(js->get<std::string>());
      else if (js->is_number())
        cfg.gammas.sim = Rational::fromDouble(js->get<double>());
      else
        throw ConfigError("gammas: 'sim' must be a number or a string");
    }
  }

  if (auto it = j.find("output"); it != j.end()) {
    if (!it->is_object()) throw ConfigError("config: 'output' must be an object");
    rejectUnknownKeys(*it, {"transitive_closure"}, "output");
    if (auto jt = it->find("transitive_closure"); jt != it->end()) {
      if (!jt->is_boolean()) throw ConfigError("output: 'transitive_closure' must be a boolean");
      cfg.output.transitive_closure = jt->get<bool>();
    }
  }

  return cfg;
}

MatchingConfig MatchingConfig::fromJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return fromJson(ss.str());
}

std::string MatchingConfig::toJson() const {
  json j;
  j["tuple_class"] = tuple_class;
  if (!source_predicate.empty()) j["source_predicate"] = source_predicate;
  j["top_class"] = top_class;
  j["reflexive_transitive_predicates"] = reflexive_transitive_predicates;
  if (!ontology_views.empty()) {
    json views = json::array();
    for (const auto& v : ontology_views) views.push_back({{"name", v.name}, {"roots", v.roots}});
    j["ontology_views"] = std::move(views);
  }
  if (!closed_marker_predicate.empty()) j["closed_marker_predicate"] = closed_marker_predicate;

  json args = json::array();
  for (const auto& a : arguments) {
    args.push_back(
        {{"index", a.index},
         {"role_class", a.role_class},
         {"predicate", a.predicate},
         {"direction",
          a.direction == Direction::TupleToMember ? "tuple_to_member" : "member_to_tuple"},
         {"preorder", preorderToJson(a.preorder)}});
  }
  j["arguments"] = std::move(args);

  json part = json::array();
  for (const auto& b : partition) {
    part.push_back({{"indices", b.indices},
                    {"preorder", preorderToJson(b.preorder)},
                    {"dependency_predicates", b.dependency_predicates}});
  }
  j["partition"] = std::move(part);

  j["gammas"] = {{"unknown", gammas.unknown}, {"sim", gammas.sim.str()}, {"comp", gammas.comp}};
  j["output"] = {{"transitive_closure", output.transitive_closure}};
  return j.dump(2) + "\n";
}

std::uint64_t MatchingConfig::digest() const {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : toJson()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

LoadOptions MatchingConfig::loadOptions() const {
  LoadOptions opts;
  opts.top_iri = top_class;
  opts.reflexive_transitive_predicates = reflexive_transitive_predicates;
  return opts;
}

std::vector<std::string> validateConfig(const MatchingConfig& cfg) {
  std::vector<std::string> out;
  const int n = static_cast<int>(cfg.arguments.size());
  const int m = static_cast<int>(cfg.partition.size());

  std::set<int> indices;
  for (const auto& a : cfg.arguments) {
    if (a.index < 1 || a.index > n)
      out.push_back("argument index " + std::to_string(a.index) + " outside 1.." +
                    std::to_string(n));
    else if (!indices.insert(a.index).second)
      out.push_back("duplicate argument index " + std::to_string(a.index));
  }

  std::set<std::pair<std::string, std::string>> schema_keys;
  for (const auto& a : cfg.arguments)
    if (!schema_keys.insert({a.role_class, a.predicate}).second)
      out.push_back("duplicate schema (role_class, predicate) = ('" + a.role_class + "', '" +
                    a.predicate + "')");

  std::set<std::string> view_names;
  for (const auto& v : cfg.ontology_views)
    if (!view_names.insert(v.name).second)
      out.push_back("duplicate ontology view name '" + v.name + "'");

  std::unordered_set<std::string> designated(cfg.reflexive_transitive_predicates.begin(),
                                             cfg.reflexive_transitive_predicates.end());
  auto checkPreorder = [&](const PreorderConfig& pc, const std::string& where) {
    if (pc.kind == PreorderSpec::Kind::Link && !designated.count(pc.predicate))
      out.push_back(where + ": link preorder predicate '" + pc.predicate +
                    "' is not declared reflexive-transitive");
    if (pc.kind == PreorderSpec::Kind::Ontology && !view_names.count(pc.view))
      out.push_back(where + ": unknown ontology view '" + pc.view + "'");
  };
  for (std::size_t k = 0; k < cfg.arguments.size(); ++k)
    checkPreorder(cfg.arguments[k].preorder, "arguments[" + std::to_string(k) + "]");

  std::map<int, int> covered;
  for (std::size_t k = 0; k < cfg.partition.size(); ++k) {
    const auto& b = cfg.partition[k];
    std::string where = "partition[" + std::to_string(k) + "]";
    checkPreorder(b.preorder, where);
    for (int i : b.indices) {
      if (i < 1 || i > n)
        out.push_back(where + ": references unknown argument index " + std::to_string(i));
      else
        ++covered[i];
    }
  }
  for (int i = 1; i <= n; ++i) {
    auto it = covered.find(i);
    if (it == covered.end())
      out.push_back("partition misses argument index " + std::to_string(i));
    else if (it->second > 1)
      out.push_back("argument index " + std::to_string(i) + " appears in " +
                    std::to_string(it->second) + " partition blocks");
  }

  if (cfg.gammas.unknown < 0 || cfg.gammas.unknown > m)
    out.push_back("gammas.unknown = " + std::to_string(cfg.gammas.unknown) + " outside 0.." +
                  std::to_string(m));
  if (cfg.gammas.comp < 0 || cfg.gammas.comp > m)
    out.push_back("gammas.comp = " + std::to_string(cfg.gammas.comp) + " outside 0.." +
                  std::to_string(m));
  if (cfg.gammas.sim < Rational(0, 1) || Rational(1, 1) < cfg.gammas.sim)
    out.push_back("gammas.sim = " + cfg.gammas.sim.str() + " outside [0, 1]");

  return out;
}

std::vector<std::string> validateConfig(const MatchingConfig& cfg, const KnowledgeBase& kb) {
  std::vector<std::string> out = validateConfig(cfg);

  auto checkClass = [&](const std::string& iri, const std::string& where) {
    EntityId e = kb.lookup(iri);
    if (e == kNoEntity || kb.classGroup(e) == kNoGroup)
      out.push_back(where + ": unknown class '" + iri + "'");
  };
  auto checkPredicate = [&](const std::string& iri, const std::string& where) {
    EntityId e = kb.lookup(iri);
    if (e == kNoEntity || !kb.isPredicate(e))
      out.push_back(where + ": unknown predicate '" + iri + "'");
  };

  checkClass(cfg.tuple_class, "tuple_class");
  for (std::size_t k = 0; k < cfg.arguments.size(); ++k) {
    std::string where = "arguments[" + std::to_string(k) + "]";
    checkClass(cfg.arguments[k].role_class, where);
    checkPredicate(cfg.arguments[k].predicate, where);
  }
  for (const auto& v : cfg.ontology_views)
    for (const auto& r : v.roots) checkClass(r, "ontology view '" + v.name + "'");

  return out;
}

}  // namespace kbmatch
