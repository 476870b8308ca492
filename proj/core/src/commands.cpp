#include "kbmatch/commands.hpp"

#include <ostream>

#include "kbmatch/config.hpp"
#include "kbmatch/errors.hpp"
#include "kbmatch/io.hpp"
#include "kbmatch/kb.hpp"
#include "kbmatch/rules.hpp"
#include "kbmatch/tuples.hpp"

namespace kbmatch {

namespace {

void printWarnings(const std::vector<std::string>& warnings, std::ostream& err) {
  for (const std::string& w : warnings) err << "warning: " << w << '\n';
}

}  // namespace

int runMatch(const MatchArgs& args, std::ostream& out, std::ostream& err) {
  try {
    MatchingConfig cfg = MatchingConfig::fromJsonFile(args.config_path);
    if (args.transitive_closure) cfg.output.transitive_closure = *args.transitive_closure;
    std::vector<std::string> findings = validateConfig(cfg);
    if (!findings.empty()) {
      std::string msg = "configuration rejected:";
      for (const std::string& f : findings) msg += "\n  " + f;
      throw ConfigError(msg);
    }

    KnowledgeBase kb = loadKbFile(args.kb_path, cfg.loadOptions());
    printWarnings(kb.warnings(), err);

    // A knowledge base without any tuple instance is a legitimate (empty)
    // input, even when the schema vocabulary is absent from it entirely.
    EntityId tuple_class = kb.lookup(cfg.tuple_class);
    bool any_tuples = tuple_class != kNoEntity && !kb.instancesOf(tuple_class).empty();

    std::vector<TupleRecord> tuples;
    MatchResult result;
    if (any_tuples) {
      ResolvedConfig rc = ResolvedConfig::resolve(kb, cfg);
      tuples = extractTuples(kb, rc, args.threads);
      std::vector<std::string> warnings;
      result = matchAll(kb, rc, tuples, args.threads, &warnings);
      printWarnings(warnings, err);
    } else {
      result.report.config_digest = cfg.digest();
      result.report.workers = 1;
    }

    writeLinksFile(args.out_path, result.links);
    writeProvenanceFile(args.out_path, tuples, kb);
    if (!args.stats_path.empty()) writeSourceMatrixFile(args.stats_path, result.matrix);
    out << result.report.render();
    return kExitOk;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const LookupError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
}

int runValidate(const std::string& kb_path, const std::string& config_path, std::ostream& out,
                std::ostream& err) {
  try {
    MatchingConfig cfg = MatchingConfig::fromJsonFile(config_path);
    KnowledgeBase kb = loadKbFile(kb_path, cfg.loadOptions());
    printWarnings(kb.warnings(), err);
    std::vector<std::string> findings = validateConfig(cfg, kb);
    for (const std::string& f : findings) out << f << '\n';
    if (findings.empty()) {
      out << "ok\n";
      return kExitOk;
    }
    return kExitConfig;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
}

int runStats(const std::string& links_path, std::ostream& out, std::ostream& err) {
  try {
    std::vector<MatchLink> links = readLinksFile(links_path);
    std::map<std::string, std::string> sources = readProvenanceFile(links_path);
    auto source_of = [&](const std::string& iri) -> const std::string& {
      static const std::string kUnknown = "unknown";
      auto it = sources.find(iri);
      return it == sources.end() ? kUnknown : it->second;
    };
    SourceMatrix matrix;
    for (const MatchLink& l : links)
      matrix.add(l.rule, source_of(l.origin), source_of(l.destination));
    out << renderSourceMatrix(matrix);
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  }
}

}  // namespace kbmatch
