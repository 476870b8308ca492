#pragma once

#include <stdexcept>
#include <string>

namespace kbmatch {

// Malformed input data (N-Triples lines, link files). Carries a 1-based line
// number when one is known; line 0 means "not line-addressable".
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, std::size_t line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                    : std::move(message)),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Configuration document is invalid or inconsistent with the knowledge base.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A query referenced an entity that is not registered (or has the wrong role).
class LookupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Filesystem-level failure (unreadable input, unwritable output).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kbmatch
