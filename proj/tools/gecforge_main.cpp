#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gecforge/config.hpp"
#include "gecforge/dataset.hpp"
#include "gecforge/errors.hpp"
#include "gecforge/eval.hpp"
#include "gecforge/llm.hpp"

using namespace gecforge;

namespace {

struct LlmFlags {
  std::string fixture;
  std::string endpoint;
  std::string record;
  bool mock = false;
};

void add_llm_flags(CLI::App* cmd, LlmFlags& flags) {
  cmd->add_option("--llm-fixture", flags.fixture,
                  "Replay canned LLM responses from this fixture file");
  cmd->add_option("--llm-endpoint", flags.endpoint, "POST prompts to this HTTP endpoint");
  cmd->add_flag("--llm-mock", flags.mock, "Use the offline deterministic mock LLM");
  cmd->add_option("--llm-record", flags.record,
                  "Record every LLM exchange to this fixture file");
}

// Ownership bundle for the configured client stack.
struct ClientStack {
  std::unique_ptr<LlmClient> base;
  std::unique_ptr<RecordingLlmClient> recorder;

  LlmClient& top() { return recorder ? static_cast<LlmClient&>(*recorder) : *base; }
};

ClientStack build_client(const ToolkitConfig& config, const LlmFlags& flags) {
  ClientStack stack;
  const std::string fixture = !flags.fixture.empty() ? flags.fixture : config.llm_fixture;
  const std::string endpoint = !flags.endpoint.empty() ? flags.endpoint : config.llm_endpoint;
  if (!fixture.empty() && !flags.mock) {
    stack.base = std::make_unique<FixtureLlmClient>(FixtureLlmClient::load(fixture));
  } else if (!endpoint.empty() && !flags.mock) {
    stack.base = std::make_unique<HttpLlmClient>(endpoint, config.llm_auth_env);
  } else {
    if (!flags.mock) {
      std::cerr << "note: no --llm-fixture or --llm-endpoint given; "
                   "using the offline mock LLM\n";
    }
    stack.base = std::make_unique<MockLlmClient>();
  }
  if (!flags.record.empty()) {
    stack.recorder = std::make_unique<RecordingLlmClient>(*stack.base, flags.record);
  }
  return stack;
}

std::vector<TagSequence> read_tag_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::vector<TagSequence> out;
  std::string line;
  size_t line_no = 0;
  bool dataset_format = false;
  while (std::getline(in, line)) {
    ++line_no;
    const size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '{') {
      dataset_format = true;
      break;
    }
    TagSequence tags;
    std::istringstream fields(line);
    std::string value;
    while (fields >> value) {
      if (value != "O" && !is_error_code(value)) {
        throw IoError(path + ":" + std::to_string(line_no) + ": unknown tag '" + value + "'");
      }
      tags.push_back(Tag{value});
    }
    out.push_back(std::move(tags));
  }
  if (!dataset_format) return out;
  // Dataset files carry the gold tags inline.
  out.clear();
  for (const ParallelExample& e : read_examples(path)) out.push_back(e.tags);
  return out;
}

std::vector<Sentence> read_sentence_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::vector<Sentence> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.push_back(tokenize(line));
  }
  return out;
}

void print_metrics_row(const std::string& label, const TagCounts& c, const Metrics& m) {
  std::printf("%-12s %8lld %8lld %8lld   %7.4f %7.4f %7.4f\n", label.c_str(),
              static_cast<long long>(c.tp), static_cast<long long>(c.fp),
              static_cast<long long>(c.fn), m.precision, m.recall, m.f_half);
}

int run_corrupt(const std::string& input, const std::string& output,
                const std::string& config_path, uint64_t seed, const LlmFlags& flags,
                const std::string& ces_path, const std::string& corpus_label,
                const std::vector<std::string>& overrides) {
  ToolkitConfig config = ToolkitConfig::load(config_path, overrides);
  if (!corpus_label.empty()) config.corpus_label = corpus_label;
  if (!ces_path.empty()) config.llm_ces = ces_path;

  const auto corpus = read_corpus(input, config.corpus_label);
  if (corpus.empty()) throw IoError("corpus " + input + " contains no sentences");

  NoiseEngine noise;
  noise.word_mu = config.word_mu;
  noise.char_mu = config.char_mu;
  noise.maps = config.charmaps;
  {
    std::set<std::string> vocab;
    for (const LabeledSentence& ls : corpus) {
      for (const Token& t : ls.sentence.tokens) {
        if (t.kind == TokenKind::Word) vocab.insert(t.text);
      }
    }
    noise.vocabulary.assign(vocab.begin(), vocab.end());
  }

  ConfusionEngine confusion;
  confusion.lists = config.confusion_lists;
  confusion.matrix = config.punct;
  confusion.p = config.confusion_p;

  ClientStack clients = build_client(config, flags);
  LlmEngine llm;
  llm.client = &clients.top();
  llm.options = config.llm;
  if (!config.llm_ces.empty()) llm.ces = CesStore::load(config.llm_ces);

  GenerationEngines engines;
  engines.noise = &noise;
  engines.confusion = &confusion;
  engines.llm = &llm;
  engines.methods = config.methods;
  engines.diagnostics = &std::cerr;

  const ErrorPlan plan = plan_errors(corpus.size(), config.shares, seed);
  const auto examples = generate_dataset(corpus, plan, engines, seed);
  write_examples(examples, output);
  std::cerr << "wrote " << examples.size() << " examples to " << output << "\n";
  return 0;
}

int run_enrich(const std::string& error_code, const std::string& corpus_path,
               const std::string& ces_path, const std::string& out_path, bool auto_accept,
               uint64_t seed, const std::string& config_path, const LlmFlags& flags,
               const std::vector<std::string>& overrides) {
  const ToolkitConfig config = ToolkitConfig::load(config_path, overrides);
  const ErrorType* error = find_error_type(error_code);
  if (error == nullptr) throw ConfigError("unknown error type " + error_code);
  if (error->method != GenMethod::TwoShotLLM) {
    throw ConfigError("enrich-ces only applies to two-shot error types, not " + error_code);
  }

  CesStore store = CesStore::load(ces_path);
  CorruptionExampleSet& set = store.require(error_code);

  std::vector<Sentence> corpus;
  for (const LabeledSentence& ls : read_corpus(corpus_path, config.corpus_label)) {
    corpus.push_back(ls.sentence);
  }

  ClientStack clients = build_client(config, flags);
  AutoAcceptReviewer auto_reviewer;
  StreamReviewer interactive(std::cin, std::cout);
  Reviewer& reviewer =
      auto_accept ? static_cast<Reviewer&>(auto_reviewer) : static_cast<Reviewer&>(interactive);

  EnrichResult result =
      enrich_ces(clients.top(), set, *error, corpus, reviewer, config.llm, seed);
  set = std::move(result.ces);
  store.save(out_path.empty() ? ces_path : out_path);

  std::cerr << "CES " << error_code << ": " << set.entries.size() << " entries ("
            << result.accepted << " accepted of " << result.candidates_generated
            << " candidates)";
  if (!result.reached_target) {
    std::cerr << "; warning: corpus exhausted before reaching " << set.capacity()
              << " entries";
  }
  std::cerr << "\n";
  return 0;
}

int run_review(const std::string& ces_path, const std::string& out_path) {
  CesStore store = CesStore::load(ces_path);
  StreamReviewer reviewer(std::cin, std::cout);
  size_t kept = 0;
  size_t dropped = 0;
  for (auto& [code, set] : store.sets) {
    std::vector<CesEntry> entries;
    for (CesEntry& entry : set.entries) {
      if (entry.origin != CesEntry::Origin::LlmGenerated) {
        entries.push_back(std::move(entry));
        continue;
      }
      std::cout << "[" << code << "]\n";
      if (reviewer.accept(entry)) {
        entries.push_back(std::move(entry));
        ++kept;
      } else {
        ++dropped;
      }
    }
    set.entries = std::move(entries);
  }
  store.save(out_path.empty() ? ces_path : out_path);
  std::cerr << "review: kept " << kept << ", dropped " << dropped << "\n";
  return 0;
}

int run_split(const std::string& input, const std::string& train_out,
              const std::string& test_out, double fraction,
              const std::string& test_corpus, uint64_t seed) {
  const auto examples = read_examples(input);
  SplitSpec spec;
  spec.train_fraction = fraction;
  if (!test_corpus.empty()) spec.test_corpus_filter = test_corpus;
  const auto [train, test] = split_examples(examples, spec, seed);
  write_examples(train, train_out);
  write_examples(test, test_out);
  std::cerr << "split: " << train.size() << " train / " << test.size() << " test\n";
  return 0;
}

int run_stats(const std::string& input, bool as_json) {
  const DatasetStats s = stats(read_examples(input));
  if (as_json) {
    std::cout << stats_to_json(s) << "\n";
  } else {
    std::cout << format_stats_table(s);
  }
  return 0;
}

int run_score_ged(const std::string& pred_path, const std::string& gold_path, bool as_json,
                  const std::string& decoding) {
  const auto pred = read_tag_file(pred_path);
  const auto gold = read_tag_file(gold_path);
  const GedReport report = score_ged(pred, gold);
  if (as_json) {
    nlohmann::json j;
    if (!decoding.empty()) j["metadata"]["decoding"] = decoding;
    auto row = [](const TagCounts& c, const Metrics& m) {
      return nlohmann::json{{"tp", c.tp},
                            {"fp", c.fp},
                            {"fn", c.fn},
                            {"precision", m.precision},
                            {"recall", m.recall},
                            {"f_half", m.f_half}};
    };
    j["per_tag"] = nlohmann::json::object();
    for (const auto& [tag, counts] : report.per_tag) {
      j["per_tag"][tag] = row(counts, report.per_tag_metrics.at(tag));
    }
    j["aggregate"] = row(report.aggregate, report.aggregate_metrics);
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  if (!decoding.empty()) std::printf("decoding: %s\n", decoding.c_str());
  std::printf("%-12s %8s %8s %8s   %7s %7s %7s\n", "tag", "tp", "fp", "fn", "P", "R", "F0.5");
  for (const auto& [tag, counts] : report.per_tag) {
    print_metrics_row(tag, counts, report.per_tag_metrics.at(tag));
  }
  print_metrics_row("ALL", report.aggregate, report.aggregate_metrics);
  return 0;
}

int run_score_gec(const std::string& src_path, const std::string& hyp_path,
                  const std::string& ref_path, bool as_json, const std::string& decoding) {
  const auto src = read_sentence_file(src_path);
  const auto hyp = read_sentence_file(hyp_path);
  const auto ref = read_sentence_file(ref_path);
  const GecReport report = score_gec(src, hyp, ref);
  if (as_json) {
    nlohmann::json j;
    if (!decoding.empty()) j["metadata"]["decoding"] = decoding;
    j["matches"] = report.matches;
    j["predicted"] = report.predicted;
    j["gold"] = report.gold;
    j["precision"] = report.metrics.precision;
    j["recall"] = report.metrics.recall;
    j["f_half"] = report.metrics.f_half;
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  if (!decoding.empty()) std::printf("decoding: %s\n", decoding.c_str());
  std::printf("edits: matched %lld of %lld predicted, %lld gold\n",
              static_cast<long long>(report.matches), static_cast<long long>(report.predicted),
              static_cast<long long>(report.gold));
  std::printf("P %.4f  R %.4f  F0.5 %.4f\n", report.metrics.precision, report.metrics.recall,
              report.metrics.f_half);
  return 0;
}

int run_validate(const std::string& input) {
  const auto examples = read_examples(input);
  const auto issues = audit_examples(examples);
  if (issues.empty()) {
    std::cout << "ok: " << examples.size() << " examples, all invariants hold\n";
    return 0;
  }
  for (const AuditIssue& issue : issues) {
    std::cout << "example " << issue.example_index << " (" << issue.id
              << "): " << issue.message << "\n";
  }
  std::cout << issues.size() << " violations in " << examples.size() << " examples\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthetic grammatical-error corpus generator and scorer for Romanian"};
  app.require_subcommand(1);

  auto* corrupt = app.add_subcommand("corrupt", "Corrupt a clean corpus into parallel examples");
  std::string input, output, config_path, ces_path, corpus_label;
  uint64_t seed = 0;
  LlmFlags llm_flags;
  std::vector<std::string> overrides;
  corrupt->add_option("--input", input, "Clean corpus (one sentence per line)")->required();
  corrupt->add_option("--output", output, "Output dataset file (JSONL)")->required();
  corrupt->add_option("--config", config_path, "Toolkit configuration file");
  corrupt->add_option("--seed", seed, "Generation seed")->default_val(0);
  corrupt->add_option("--ces", ces_path, "CES file for two-shot prompting");
  corrupt->add_option("--corpus-label", corpus_label, "Source corpus label for plain lines");
  corrupt->add_option("--set", overrides, "Config override key=value (repeatable)");
  add_llm_flags(corrupt, llm_flags);

  auto* enrich =
      app.add_subcommand("enrich-ces", "Grow a corruption example set to 2x its seed size");
  std::string enrich_error, enrich_corpus, enrich_ces_path, enrich_out, enrich_config;
  bool auto_accept = false;
  uint64_t enrich_seed = 0;
  LlmFlags enrich_flags;
  std::vector<std::string> enrich_overrides;
  enrich->add_option("--error", enrich_error, "Error type code (two-shot types only)")
      ->required();
  enrich->add_option("--corpus", enrich_corpus, "Clean corpus feeding candidates")->required();
  enrich->add_option("--ces", enrich_ces_path, "CES file to enrich")->required();
  enrich->add_option("--out", enrich_out, "Write result here instead of in place");
  enrich->add_flag("--auto-accept", auto_accept, "Accept every validated candidate");
  enrich->add_option("--seed", enrich_seed, "Draw seed")->default_val(0);
  enrich->add_option("--config", enrich_config, "Toolkit configuration file");
  enrich->add_option("--set", enrich_overrides, "Config override key=value (repeatable)");
  add_llm_flags(enrich, enrich_flags);

  auto* review =
      app.add_subcommand("review", "Interactively accept or reject generated CES entries");
  std::string review_ces, review_out;
  review->add_option("--ces", review_ces, "CES file to review")->required();
  review->add_option("--out", review_out, "Write result here instead of in place");

  auto* split = app.add_subcommand("split", "Split a dataset into train and test");
  std::string split_input, train_out, test_out, test_corpus;
  double fraction = 0.9;
  uint64_t split_seed = 0;
  split->add_option("--input", split_input, "Dataset file")->required();
  split->add_option("--train-out", train_out, "Training split output")->required();
  split->add_option("--test-out", test_out, "Test split output")->required();
  split->add_option("--fraction", fraction, "Training fraction")->default_val(0.9);
  split->add_option("--test-corpus", test_corpus, "Restrict the test split to this corpus");
  split->add_option("--seed", split_seed, "Shuffle seed")->default_val(0);

  auto* stats_cmd = app.add_subcommand("stats", "Dataset composition statistics");
  std::string stats_input;
  bool stats_json = false;
  stats_cmd->add_option("--input", stats_input, "Dataset file")->required();
  stats_cmd->add_flag("--json", stats_json, "Emit machine-readable JSON");

  auto* ged = app.add_subcommand("score-ged", "Per-tag detection scoring");
  std::string ged_pred, ged_gold, ged_decoding;
  bool ged_json = false;
  ged->add_option("--pred", ged_pred, "Predicted tags (lines of tags, or a dataset file)")
      ->required();
  ged->add_option("--gold", ged_gold, "Gold tags (lines of tags, or a dataset file)")
      ->required();
  ged->add_flag("--json", ged_json, "Emit machine-readable JSON");
  ged->add_option("--decoding", ged_decoding,
                  "Decoding-strategy note recorded as report metadata");

  auto* gec = app.add_subcommand("score-gec", "Edit-based correction scoring");
  std::string gec_src, gec_hyp, gec_ref, gec_decoding;
  bool gec_json = false;
  gec->add_option("--src", gec_src, "Source sentences, one per line")->required();
  gec->add_option("--hyp", gec_hyp, "Hypothesis sentences, one per line")->required();
  gec->add_option("--ref", gec_ref, "Reference sentences, one per line")->required();
  gec->add_flag("--json", gec_json, "Emit machine-readable JSON");
  gec->add_option("--decoding", gec_decoding,
                  "Decoding-strategy note recorded as report metadata");

  auto* validate = app.add_subcommand("validate", "Audit a dataset file's invariants");
  std::string validate_input;
  validate->add_option("--input", validate_input, "Dataset file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (corrupt->parsed()) {
      return run_corrupt(input, output, config_path, seed, llm_flags, ces_path, corpus_label,
                         overrides);
    }
    if (enrich->parsed()) {
      return run_enrich(enrich_error, enrich_corpus, enrich_ces_path, enrich_out, auto_accept,
                        enrich_seed, enrich_config, enrich_flags, enrich_overrides);
    }
    if (review->parsed()) return run_review(review_ces, review_out);
    if (split->parsed()) {
      return run_split(split_input, train_out, test_out, fraction, test_corpus, split_seed);
    }
    if (stats_cmd->parsed()) return run_stats(stats_input, stats_json);
    if (ged->parsed()) return run_score_ged(ged_pred, ged_gold, ged_json, ged_decoding);
    if (gec->parsed()) return run_score_gec(gec_src, gec_hyp, gec_ref, gec_json, gec_decoding);
    if (validate->parsed()) return run_validate(validate_input);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
