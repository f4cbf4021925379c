#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gecforge/confusion.hpp"
#include "gecforge/llm.hpp"
#include "gecforge/noise.hpp"
#include "gecforge/taxonomy.hpp"
#include "gecforge/text.hpp"

namespace gecforge {

struct LabeledSentence {
  std::string source_corpus;
  Sentence sentence;
};

// Confusion-list pass plus punctuation matrix pass, bundled for dispatch.
struct ConfusionEngine {
  ConfusionLists lists = ConfusionLists::defaults();
  PunctMatrix matrix = PunctMatrix::defaults();
  double p = 0.3;
};

struct GenerationEngines {
  const NoiseEngine* noise = nullptr;
  const ConfusionEngine* confusion = nullptr;
  const LlmEngine* llm = nullptr;  // optional when no LLM errors are planned
  std::map<std::string, GenMethod> methods;  // code -> method, config-overridable
  std::ostream* diagnostics = nullptr;
};

std::string stable_example_id(const std::string& source_corpus, size_t sentence_index);

// Dispatches every sentence to the engine owning its planned error's method.
// LLM sentences that come back NoPartOfSpeech or fail generation are
// re-routed to noise injection so corpus coverage stays total.
std::vector<ParallelExample> generate_dataset(std::span<const LabeledSentence> corpus,
                                              const ErrorPlan& plan,
                                              const GenerationEngines& engines, uint64_t seed);

// Line-delimited JSON records; read(write(x)) == x.
void write_examples(std::span<const ParallelExample> examples, std::ostream& out);
void write_examples(std::span<const ParallelExample> examples, const std::string& path);
std::vector<ParallelExample> read_examples(std::istream& in, const std::string& name);
std::vector<ParallelExample> read_examples(const std::string& path);

struct SplitSpec {
  double train_fraction = 0.9;
  std::optional<std::string> test_corpus_filter;
};

// Deterministic membership per seed; with a corpus filter the test set is
// drawn exclusively from that corpus.
std::pair<std::vector<ParallelExample>, std::vector<ParallelExample>> split_examples(
    std::span<const ParallelExample> examples, const SplitSpec& spec, uint64_t seed);

struct CorpusStats {
  size_t sentence_count = 0;
  size_t token_count = 0;
  size_t erroneous_token_count = 0;
  double error_rate = 0.0;
};

struct DatasetStats {
  std::map<std::string, CorpusStats> per_corpus;
  CorpusStats total;
  std::map<std::string, size_t> per_type_counts;   // non-O tag tallies
  std::map<std::string, double> per_type_shares;   // fraction of all error tokens
};

DatasetStats stats(std::span<const ParallelExample> examples);
std::string format_stats_table(const DatasetStats& s);
std::string stats_to_json(const DatasetStats& s);

// Invariant audit of a dataset: tag/token alignment, tag membership in
// `injected`, error tags only at changed or inserted positions.
struct AuditIssue {
  size_t example_index = 0;
  std::string id;
  std::string message;
};

std::vector<AuditIssue> audit_examples(std::span<const ParallelExample> examples);

// Corpus ingestion: plain sentences, optionally "label<TAB>sentence" lines.
std::vector<LabeledSentence> read_corpus(const std::string& path,
                                         const std::string& default_label);

}  // namespace gecforge
