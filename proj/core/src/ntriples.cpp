#include "kbmatch/ntriples.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "kbmatch/errors.hpp"

namespace kbmatch {

namespace {

bool isWs(char c) { return c == ' ' || c == '\t' || c == '\r'; }

void skipWs(const std::string& line, std::size_t& pos) {
  while (pos < line.size() && isWs(line[pos])) ++pos;
}

// Parses `<iri>` starting at pos, advancing pos past the closing bracket.
std::string parseIri(const std::string& line, std::size_t& pos, std::size_t lineno) {
  if (pos >= line.size() || line[pos] != '<')
    throw ParseError("expected '<' to open an IRI", lineno);
  std::size_t start = ++pos;
  while (pos < line.size() && line[pos] != '>') {
    char c = line[pos];
    if (c == '<' || c == '"' || c == ' ' || c == '\t')
      throw ParseError("illegal character inside IRI", lineno);
    ++pos;
  }
  if (pos >= line.size()) throw ParseError("unterminated IRI", lineno);
  std::string iri = line.substr(start, pos - start);
  ++pos;  // '>'
  if (iri.empty()) throw ParseError("empty IRI", lineno);
  if (iri.find(':') == std::string::npos)
    throw ParseError("IRI lacks a scheme: '" + iri + "'", lineno);
  return iri;
}

}  // namespace

std::vector<Triple> readNTriples(std::istream& in, std::vector<std::size_t>* lines) {
  std::vector<Triple> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t pos = 0;
    skipWs(line, pos);
    if (pos >= line.size() || line[pos] == '#') continue;
    Triple t;
    t.subject = parseIri(line, pos, lineno);
    skipWs(line, pos);
    t.predicate = parseIri(line, pos, lineno);
    skipWs(line, pos);
    t.object = parseIri(line, pos, lineno);
    skipWs(line, pos);
    if (pos >= line.size() || line[pos] != '.')
      throw ParseError("expected '.' after object", lineno);
    ++pos;
    skipWs(line, pos);
    if (pos != line.size())
      throw ParseError("trailing content after '.'", lineno);
    out.push_back(std::move(t));
    if (lines) lines->push_back(lineno);
  }
  return out;
}

std::vector<Triple> readNTriplesFile(const std::string& path, std::vector<std::size_t>* lines) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return readNTriples(in, lines);
}

std::string formatTriple(const Triple& t) {
  std::string s;
  s.reserve(t.subject.size() + t.predicate.size() + t.object.size() + 10);
  s += '<';
  s += t.subject;
  s += "> <";
  s += t.predicate;
  s += "> <";
  s += t.object;
  s += "> .";
  return s;
}

void writeNTriples(std::ostream& out, const std::vector<Triple>& triples) {
  for (const auto& t : triples) out << formatTriple(t) << '\n';
}

}  // namespace kbmatch
