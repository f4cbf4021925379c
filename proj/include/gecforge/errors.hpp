#pragma once

#include <stdexcept>
#include <string>

namespace gecforge {

// Bad configuration: shares not summing to one, invalid matrix rows, unknown codes.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// File-level failures: missing files, malformed dataset/CES lines.
struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// API misuse: wrong generation method for an operation, mismatched lengths.
struct UsageError : std::runtime_error {
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

// Out-of-range indices and other data validation failures.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Scoring input mismatches (unequal sequence counts or lengths).
struct ScoringError : std::runtime_error {
  explicit ScoringError(const std::string& what) : std::runtime_error(what) {}
};

// An LLM response that could not be interpreted; carries the raw text.
struct ParseError : std::runtime_error {
  ParseError(const std::string& what, std::string raw)
      : std::runtime_error(what), raw_text(std::move(raw)) {}
  std::string raw_text;
};

// Transport-level LLM failure (network, missing fixture entry).
struct LlmTransportError : std::runtime_error {
  explicit LlmTransportError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gecforge
