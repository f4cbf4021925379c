#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "gecforge/rng.hpp"
#include "gecforge/text.hpp"

namespace gecforge {

// One corruption exemplar feeding two-shot prompts.
struct CesEntry {
  enum class Origin { SeedBook, LlmGenerated };

  std::string erroneous;
  std::string correct;
  TagSequence tags;
  Origin origin = Origin::SeedBook;

  void validate() const;

  friend bool operator==(const CesEntry&, const CesEntry&) = default;
};

// Per-error-type exemplar pool; enrichment may at most double the seed size.
struct CorruptionExampleSet {
  std::string error_type;
  std::vector<CesEntry> entries;
  size_t initial_size = 0;

  size_t capacity() const { return 2 * initial_size; }
  bool at_capacity() const { return entries.size() >= capacity(); }
};

// CES collection persisted as line-delimited JSON.
struct CesStore {
  std::map<std::string, CorruptionExampleSet> sets;

  static CesStore load(const std::string& path);
  void save(const std::string& path) const;

  CorruptionExampleSet& require(const std::string& code);
};

struct LlmRequest {
  std::string model_id;
  double temperature = 0.7;
  std::string prompt;

  // Stable fixture key over all request fields.
  std::string stable_key() const;
};

struct LlmResponse {
  std::string text;
};

class LlmClient {
public:
  virtual ~LlmClient() = default;
  // Throws LlmTransportError on failure.
  virtual LlmResponse complete(const LlmRequest& request) = 0;
};

// Replays canned responses keyed by LlmRequest::stable_key().
class FixtureLlmClient : public LlmClient {
public:
  FixtureLlmClient() = default;
  static FixtureLlmClient load(const std::string& path);
  void add(const std::string& key, const std::string& text);
  LlmResponse complete(const LlmRequest& request) override;

private:
  std::map<std::string, std::string> responses_;
};

// Offline deterministic stand-in: parses the prompt, corrupts the embedded
// sentence by simple per-error rules and replies in the Index: format.
class MockLlmClient : public LlmClient {
public:
  LlmResponse complete(const LlmRequest& request) override;
};

// POSTs {model_id, prompt, temperature} as JSON and expects {text}.
class HttpLlmClient : public LlmClient {
public:
  HttpLlmClient(std::string endpoint, std::string auth_env);
  LlmResponse complete(const LlmRequest& request) override;

private:
  std::string endpoint_;
  std::string auth_env_;
};

// Tees every exchange through to a fixture file for later replay.
class RecordingLlmClient : public LlmClient {
public:
  RecordingLlmClient(LlmClient& inner, std::string path);
  LlmResponse complete(const LlmRequest& request) override;

private:
  LlmClient& inner_;
  std::string path_;
};

// Instruction phrase embedded in the prompts for one error type.
const std::string& error_instruction(const std::string& code);

std::string build_zero_shot_prompt(const ErrorType& error, const std::string& sentence);
std::string build_two_shot_prompt(const ErrorType& error, const std::string& sentence,
                                  const CesEntry& ex1, const CesEntry& ex2);

struct ParsedCorruption {
  enum class Verdict { Corrupted, NoPartOfSpeech };

  std::string erroneous_sentence;
  std::vector<int64_t> indices;  // sorted ascending, deduplicated
  Verdict verdict = Verdict::Corrupted;
};

// "NO" (trimmed, case-insensitive) means the part of speech is absent;
// otherwise extracts the sentence and the bracketed list after "Index:"
// (or the Romanian "Indice:"). Throws ParseError otherwise.
ParsedCorruption parse_llm_response(const std::string& text);

// Empty result means the corruption is acceptable; otherwise human-readable
// failure reasons.
std::vector<std::string> validate_corruption(const Sentence& correct,
                                             const ParsedCorruption& parsed,
                                             const ErrorType& error);

struct NoPartOfSpeech {};
struct GenerationFailure {
  std::string cause;
};
using LlmOutcome = std::variant<ParallelExample, NoPartOfSpeech, GenerationFailure>;

struct LlmOptions {
  std::string model_id = "gpt-4o";
  double temperature = 0.7;
  int max_retries = 3;
  int retry_backoff_ms = 500;
  int max_in_flight = 1;
};

// Prompt construction, submission with bounded retries, parsing, validation
// and tag derivation for one sentence.
struct LlmEngine {
  LlmClient* client = nullptr;
  LlmOptions options;
  CesStore ces;

  LlmOutcome generate(const ErrorType& error, const Sentence& sentence, Rng& rng) const;
};

LlmOutcome generate_llm_example(LlmClient& client, const CorruptionExampleSet& ces,
                                const ErrorType& error, const Sentence& sentence,
                                const LlmOptions& options, Rng& rng);

// Accept/reject hook standing in for the manual analysis step.
class Reviewer {
public:
  virtual ~Reviewer() = default;
  virtual bool accept(const CesEntry& candidate) = 0;
};

class AutoAcceptReviewer : public Reviewer {
public:
  bool accept(const CesEntry&) override { return true; }
};

// Interactive accept/reject on a stream pair (the CLI passes stdin/stdout).
class StreamReviewer : public Reviewer {
public:
  StreamReviewer(std::istream& in, std::ostream& out) : in_(in), out_(out) {}
  bool accept(const CesEntry& candidate) override;

private:
  std::istream& in_;
  std::ostream& out_;
};

struct EnrichResult {
  CorruptionExampleSet ces;
  bool reached_target = false;
  size_t candidates_generated = 0;
  size_t accepted = 0;
};

// Streams corpus sentences through the two-shot pipeline, appending accepted
// candidates until the seed size is doubled or the corpus runs out.
EnrichResult enrich_ces(LlmClient& client, CorruptionExampleSet ces, const ErrorType& error,
                        std::span<const Sentence> corpus, Reviewer& reviewer,
                        const LlmOptions& options, uint64_t seed);

}  // namespace gecforge
