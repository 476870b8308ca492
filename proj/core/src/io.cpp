#include "kbmatch/io.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "kbmatch/errors.hpp"
#include "kbmatch/ntriples.hpp"

namespace kbmatch {

void writeLinks(std::ostream& out, const std::vector<MatchLink>& links) {
  for (const MatchLink& l : links)
    out << formatTriple({l.origin, levelPredicate(l.level), l.destination}) << '\n';
}

void writeLinksFile(const std::string& path, const std::vector<MatchLink>& links) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  writeLinks(out, links);
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::vector<MatchLink> readLinks(std::istream& in) {
  std::vector<std::size_t> lines;
  std::vector<Triple> triples = readNTriples(in, &lines);
  std::vector<MatchLink> out;
  out.reserve(triples.size());
  for (std::size_t i = 0; i < triples.size(); ++i) {
    auto level = levelFromPredicate(triples[i].predicate);
    if (!level)
      throw ParseError("'" + triples[i].predicate + "' is not an alignment predicate", lines[i]);
    out.push_back({std::move(triples[i].subject), std::move(triples[i].object), *level,
                   ruleNumber(*level), false});
  }
  return out;
}

std::vector<MatchLink> readLinksFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return readLinks(in);
}

std::string provenancePath(const std::string& links_path) { return links_path + ".prov.tsv"; }

void writeProvenanceFile(const std::string& links_path, const std::vector<TupleRecord>& tuples,
                         const KnowledgeBase& kb) {
  std::string path = provenancePath(links_path);
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  std::vector<std::pair<std::string, const std::string*>> rows;
  rows.reserve(tuples.size());
  for (const TupleRecord& t : tuples) rows.emplace_back(kb.iri(t.id), &t.source);
  std::sort(rows.begin(), rows.end());
  for (const auto& [iri, source] : rows) out << iri << '\t' << *source << '\n';
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::map<std::string, std::string> readProvenanceFile(const std::string& links_path) {
  std::map<std::string, std::string> out;
  std::ifstream in(provenancePath(links_path));
  if (!in) return out;  // tolerated: sources degrade to "unknown"
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0)
      throw ParseError("provenance row lacks a tab separator", lineno);
    out[line.substr(0, tab)] = line.substr(tab + 1);
  }
  return out;
}

void writeSourceMatrix(std::ostream& out, const SourceMatrix& matrix) {
  out << "#rule\torigin_source\tdestination_source\tcount\n";
  for (const auto& [key, count] : matrix.cells) {
    const auto& [rule, origin, dest] = key;
    out << rule << '\t' << origin << '\t' << dest << '\t' << count << '\n';
  }
}

void writeSourceMatrixFile(const std::string& path, const SourceMatrix& matrix) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  writeSourceMatrix(out, matrix);
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::string renderSourceMatrix(const SourceMatrix& matrix) {
  // One row per source pair, one column per level, totals on both edges.
  std::set<std::pair<std::string, std::string>> pairs;
  for (const auto& [key, count] : matrix.cells)
    pairs.insert({std::get<1>(key), std::get<2>(key)});

  std::ostringstream out;
  out << "origin_source\tdestination_source";
  for (std::size_t i = 0; i < kLevelCount; ++i)
    out << '\t' << levelName(static_cast<RelatednessLevel>(i));
  out << "\ttotal\n";

  std::array<std::uint64_t, kLevelCount> col_totals{};
  for (const auto& [origin, dest] : pairs) {
    out << origin << '\t' << dest;
    std::uint64_t row_total = 0;
    for (std::size_t i = 0; i < kLevelCount; ++i) {
      auto it = matrix.cells.find({static_cast<int>(i) + 1, origin, dest});
      std::uint64_t c = it == matrix.cells.end() ? 0 : it->second;
      out << '\t' << c;
      row_total += c;
      col_totals[i] += c;
    }
    out << '\t' << row_total << '\n';
  }

  out << "total\t";
  std::uint64_t grand = 0;
  for (std::size_t i = 0; i < kLevelCount; ++i) {
    out << '\t' << col_totals[i];
    grand += col_totals[i];
  }
  out << '\t' << grand << '\n';
  return out.str();
}

}  // namespace kbmatch
