#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace kbmatch {

// Exit codes shared by the subcommands: 0 success, 1 parse error,
// 2 configuration error, 3 I/O error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitIo = 3;

struct MatchArgs {
  std::string kb_path;
  std::string config_path;
  std::string out_path;
  std::string stats_path;              // empty: no stats TSV
  unsigned threads = 0;                // 0: hardware concurrency
  std::optional<bool> transitive_closure;  // unset: follow the config
};

int runMatch(const MatchArgs& args, std::ostream& out, std::ostream& err);
int runValidate(const std::string& kb_path, const std::string& config_path, std::ostream& out,
                std::ostream& err);
int runStats(const std::string& links_path, std::ostream& out, std::ostream& err);
// The generator command lives with the test kit; see testkit.hpp.

}  // namespace kbmatch
