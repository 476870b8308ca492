#pragma once

// Shared helpers for the test binaries.

#include <sstream>
#include <string>
#include <vector>

#include "kbmatch/kb.hpp"

namespace kbtest {

// Triples in a compact prefix-free notation: "s p o" per line with the
// http://example.org/t# prefix applied to bare names; names containing ':'
// pass through. Keeps fixtures readable.
inline std::string expand(const std::string& name) {
  if (name.find(':') != std::string::npos) return name;
  return "http://example.org/t#" + name;
}

inline std::string toNTriples(const std::string& compact) {
  std::istringstream in(compact);
  std::ostringstream out;
  std::string s, p, o;
  while (in >> s >> p >> o) {
    if (p == "a") p = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
    if (p == "sub") p = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
    if (p == "subp") p = "http://www.w3.org/2000/01/rdf-schema#subPropertyOf";
    if (p == "same") p = "http://www.w3.org/2002/07/owl#sameAs";
    out << '<' << expand(s) << "> <" << expand(p) << "> <" << expand(o) << "> .\n";
  }
  return out.str();
}

inline kbmatch::KnowledgeBase loadCompact(const std::string& compact,
                                          kbmatch::LoadOptions opts = {}) {
  std::istringstream in(toNTriples(compact));
  return kbmatch::loadKb(in, opts);
}

inline std::vector<kbmatch::EntityId> ids(const kbmatch::KnowledgeBase& kb,
                                          const std::vector<std::string>& names) {
  std::vector<kbmatch::EntityId> out;
  for (const std::string& n : names) out.push_back(kb.require(expand(n)));
  return out;
}

}  // namespace kbtest
