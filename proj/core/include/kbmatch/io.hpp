#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "kbmatch/rules.hpp"
#include "kbmatch/tuples.hpp"

namespace kbmatch {

// Alignment links as N-Triples with the level vocabulary. The induced flag
// is not representable in the output format and is dropped on write.
void writeLinks(std::ostream& out, const std::vector<MatchLink>& links);
void writeLinksFile(const std::string& path, const std::vector<MatchLink>& links);
std::vector<MatchLink> readLinks(std::istream& in);
std::vector<MatchLink> readLinksFile(const std::string& path);  // ParseError on foreign predicates

// Sidecar mapping tuple IRI -> source label, written next to the link file
// (path + ".prov.tsv") so the stats command is self-contained.
std::string provenancePath(const std::string& links_path);
void writeProvenanceFile(const std::string& links_path, const std::vector<TupleRecord>& tuples,
                         const KnowledgeBase& kb);
std::map<std::string, std::string> readProvenanceFile(const std::string& links_path);

// Source matrix as TSV: rule, origin_source, destination_source, count.
void writeSourceMatrix(std::ostream& out, const SourceMatrix& matrix);
void writeSourceMatrixFile(const std::string& path, const SourceMatrix& matrix);

// Rule-by-source-pair table: one row per source pair, one column per level.
std::string renderSourceMatrix(const SourceMatrix& matrix);

}  // namespace kbmatch
