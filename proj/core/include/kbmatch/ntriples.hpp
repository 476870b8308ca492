#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kbmatch {

// One parsed statement. All three terms are IRIs without the angle brackets.
struct Triple {
  std::string subject;
  std::string predicate;
  std::string object;

  friend bool operator==(const Triple&, const Triple&) = default;
};

// Reads the line-oriented IRI-only N-Triples subset: one `<s> <p> <o> .` per
// line, `#` comment lines and blank lines skipped. Throws ParseError with a
// 1-based line number on anything else (literals, blank nodes, stray text).
// When `lines` is given it receives the source line of each returned triple.
std::vector<Triple> readNTriples(std::istream& in, std::vector<std::size_t>* lines = nullptr);
std::vector<Triple> readNTriplesFile(const std::string& path, std::vector<std::size_t>* lines = nullptr);

std::string formatTriple(const Triple& t);
void writeNTriples(std::ostream& out, const std::vector<Triple>& triples);

}  // namespace kbmatch
