#include "gecforge/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "gecforge/errors.hpp"
#include "gecforge/rng.hpp"

namespace gecforge {

using nlohmann::json;

namespace {

std::vector<std::string> injected_from_tags(const TagSequence& tags) {
  std::vector<std::string> out;
  for (const Tag& t : tags) {
    if (t.is_error() && std::find(out.begin(), out.end(), t.value) == out.end()) {
      out.push_back(t.value);
    }
  }
  return out;
}

std::string tags_to_string(const TagSequence& tags) {
  std::string out;
  for (size_t i = 0; i < tags.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += tags[i].value;
  }
  return out;
}

json sentence_to_json(const Sentence& s) {
  json j;
  j["text"] = s.raw;
  json tokens = json::array();
  for (const Token& t : s.tokens) tokens.push_back(t.text);
  j["tokens"] = std::move(tokens);
  return j;
}

Sentence sentence_from_json(const json& j) {
  std::vector<std::string> texts;
  for (const auto& t : j.at("tokens")) texts.push_back(t.get<std::string>());
  Sentence s = Sentence::from_token_texts(texts);
  const std::string text = j.at("text").get<std::string>();
  if (s.raw != text) {
    throw IoError("sentence text does not match its tokens: \"" + text + "\"");
  }
  return s;
}

json example_to_json(const ParallelExample& e) {
  json j;
  j["id"] = e.id;
  j["source_corpus"] = e.source_corpus;
  j["correct"] = sentence_to_json(e.correct);
  j["erroneous"] = sentence_to_json(e.erroneous);
  json tags = json::array();
  for (const Tag& t : e.tags) tags.push_back(t.value);
  j["tags"] = std::move(tags);
  j["tags_str"] = tags_to_string(e.tags);
  j["injected"] = e.injected;
  j["seed"] = e.seed;
  return j;
}

ParallelExample example_from_json(const json& j) {
  ParallelExample e;
  e.id = j.at("id").get<std::string>();
  e.source_corpus = j.at("source_corpus").get<std::string>();
  e.correct = sentence_from_json(j.at("correct"));
  e.erroneous = sentence_from_json(j.at("erroneous"));
  for (const auto& t : j.at("tags")) {
    const std::string value = t.get<std::string>();
    if (value != "O" && !is_error_code(value)) throw IoError("unknown tag '" + value + "'");
    e.tags.push_back(Tag{value});
  }
  for (const auto& code : j.at("injected")) {
    e.injected.push_back(code.get<std::string>());
  }
  e.seed = j.at("seed").get<uint64_t>();
  if (e.tags.size() != e.erroneous.tokens.size()) {
    throw IoError("tag count " + std::to_string(e.tags.size()) + " does not match token count " +
                  std::to_string(e.erroneous.tokens.size()));
  }
  return e;
}

}  // namespace

std::string stable_example_id(const std::string& source_corpus, size_t sentence_index) {
  std::string blob = source_corpus;
  blob.push_back('\0');
  blob += std::to_string(sentence_index);
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(fnv1a64(blob)));
  return hex;
}

std::vector<ParallelExample> generate_dataset(std::span<const LabeledSentence> corpus,
                                              const ErrorPlan& plan,
                                              const GenerationEngines& engines, uint64_t seed) {
  if (plan.size() < corpus.size()) {
    throw ConfigError("plan covers " + std::to_string(plan.size()) + " sentences but corpus has " +
                      std::to_string(corpus.size()));
  }
  if (engines.noise == nullptr || engines.confusion == nullptr) {
    throw ConfigError("generation requires noise and confusion engines");
  }

  std::vector<ParallelExample> out;
  out.reserve(corpus.size());
  for (size_t i = 0; i < corpus.size(); ++i) {
    const std::string& code = plan[i];
    const ErrorType* error = find_error_type(code);
    if (error == nullptr) throw ConfigError("plan contains unknown error code " + code);
    GenMethod method = error->method;
    if (auto it = engines.methods.find(code); it != engines.methods.end()) method = it->second;

    const uint64_t sentence_seed = derive_seed(seed, i);
    Rng rng(sentence_seed);
    const Sentence correct =
        Sentence::from_token_texts(corpus[i].sentence.token_texts());

    std::pair<Sentence, TagSequence> result;
    switch (method) {
      case GenMethod::NoiseInjection:
        result = engines.noise->corrupt(correct, rng);
        break;
      case GenMethod::ConfusionList:
        if (code == "PUNCT") {
          result = corrupt_punctuation(correct, engines.confusion->matrix, rng);
        } else {
          result = corrupt_function_words(correct, engines.confusion->lists,
                                          engines.confusion->p, rng);
        }
        break;
      case GenMethod::ZeroShotLLM:
      case GenMethod::TwoShotLLM: {
        if (engines.llm == nullptr) {
          throw ConfigError("plan assigns " + code + " but no LLM engine is configured");
        }
        LlmOutcome outcome = engines.llm->generate(*error, correct, rng);
        if (auto* example = std::get_if<ParallelExample>(&outcome)) {
          result = {example->erroneous, example->tags};
        } else {
          if (engines.diagnostics != nullptr) {
            const char* reason = std::holds_alternative<NoPartOfSpeech>(outcome)
                                     ? "no matching part of speech"
                                     : std::get<GenerationFailure>(outcome).cause.c_str();
            (*engines.diagnostics) << "sentence " << i << " (" << code
                                   << "): " << reason << "; falling back to noise\n";
          }
          Rng fallback_rng(derive_seed(sentence_seed, 1));
          result = engines.noise->corrupt(correct, fallback_rng);
        }
        break;
      }
    }

    ParallelExample example;
    example.id = stable_example_id(corpus[i].source_corpus, i);
    example.source_corpus = corpus[i].source_corpus;
    example.correct = correct;
    example.erroneous = std::move(result.first);
    example.tags = std::move(result.second);
    example.injected = injected_from_tags(example.tags);
    example.seed = sentence_seed;
    out.push_back(std::move(example));
  }
  return out;
}

void write_examples(std::span<const ParallelExample> examples, std::ostream& out) {
  for (const ParallelExample& e : examples) {
    if (e.tags.size() != e.erroneous.tokens.size()) {
      throw ValidationError("example " + e.id + " has " + std::to_string(e.tags.size()) +
                            " tags for " + std::to_string(e.erroneous.tokens.size()) +
                            " tokens");
    }
    out << example_to_json(e).dump() << "\n";
  }
}

void write_examples(std::span<const ParallelExample> examples, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  write_examples(examples, out);
}

std::vector<ParallelExample> read_examples(std::istream& in, const std::string& name) {
  std::vector<ParallelExample> out;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(example_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw IoError(name + ":" + std::to_string(line_no) + ": " + e.what());
    } catch (const IoError& e) {
      throw IoError(name + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::vector<ParallelExample> read_examples(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return read_examples(in, path);
}

std::pair<std::vector<ParallelExample>, std::vector<ParallelExample>> split_examples(
    std::span<const ParallelExample> examples, const SplitSpec& spec, uint64_t seed) {
  if (spec.train_fraction <= 0.0 || spec.train_fraction >= 1.0) {
    throw ConfigError("train fraction must be in (0,1)");
  }
  const size_t n = examples.size();
  const size_t n_train =
      static_cast<size_t>(std::llround(static_cast<double>(n) * spec.train_fraction));
  const size_t n_test = n - n_train;

  std::vector<size_t> candidates;
  for (size_t i = 0; i < n; ++i) {
    if (!spec.test_corpus_filter || examples[i].source_corpus == *spec.test_corpus_filter) {
      candidates.push_back(i);
    }
  }
  if (candidates.size() < n_test) {
    throw ConfigError("test split needs " + std::to_string(n_test) + " examples from corpus '" +
                      spec.test_corpus_filter.value_or("<any>") + "' but only " +
                      std::to_string(candidates.size()) + " are available");
  }
  Rng rng(seed);
  rng.shuffle(candidates);
  std::set<size_t> test_members(candidates.begin(),
                                candidates.begin() + static_cast<ptrdiff_t>(n_test));

  std::pair<std::vector<ParallelExample>, std::vector<ParallelExample>> out;
  for (size_t i = 0; i < n; ++i) {
    if (test_members.count(i)) {
      out.second.push_back(examples[i]);
    } else {
      out.first.push_back(examples[i]);
    }
  }
  return out;
}

DatasetStats stats(std::span<const ParallelExample> examples) {
  DatasetStats s;
  size_t total_errors = 0;
  for (const ParallelExample& e : examples) {
    CorpusStats& row = s.per_corpus[e.source_corpus];
    row.sentence_count += 1;
    row.token_count += e.erroneous.tokens.size();
    for (const Tag& t : e.tags) {
      if (t.is_error()) {
        row.erroneous_token_count += 1;
        s.per_type_counts[t.value] += 1;
        ++total_errors;
      }
    }
  }
  for (auto& [label, row] : s.per_corpus) {
    row.error_rate = row.token_count > 0
                         ? static_cast<double>(row.erroneous_token_count) /
                               static_cast<double>(row.token_count)
                         : 0.0;
    s.total.sentence_count += row.sentence_count;
    s.total.token_count += row.token_count;
    s.total.erroneous_token_count += row.erroneous_token_count;
  }
  s.total.error_rate = s.total.token_count > 0
                           ? static_cast<double>(s.total.erroneous_token_count) /
                                 static_cast<double>(s.total.token_count)
                           : 0.0;
  for (const auto& [code, count] : s.per_type_counts) {
    s.per_type_shares[code] =
        total_errors > 0 ? static_cast<double>(count) / static_cast<double>(total_errors) : 0.0;
  }
  return s;
}

std::string format_stats_table(const DatasetStats& s) {
  std::ostringstream out;
  char line[256];
  out << "source            sentences      tokens  err.tokens  error rate\n";
  auto row = [&](const std::string& label, const CorpusStats& c) {
    std::snprintf(line, sizeof(line), "%-16s %10zu %11zu %11zu %10.2f%%\n", label.c_str(),
                  c.sentence_count, c.token_count, c.erroneous_token_count,
                  100.0 * c.error_rate);
    out << line;
  };
  for (const auto& [label, c] : s.per_corpus) row(label, c);
  row("total", s.total);
  if (!s.per_type_counts.empty()) {
    out << "\nerror type            count       share\n";
    for (const auto& [code, count] : s.per_type_counts) {
      std::snprintf(line, sizeof(line), "%-16s %10zu %10.2f%%\n", code.c_str(), count,
                    100.0 * s.per_type_shares.at(code));
      out << line;
    }
  }
  return out.str();
}

std::string stats_to_json(const DatasetStats& s) {
  json j;
  auto row = [](const CorpusStats& c) {
    json r;
    r["sentences"] = c.sentence_count;
    r["tokens"] = c.token_count;
    r["erroneous_tokens"] = c.erroneous_token_count;
    r["error_rate"] = c.error_rate;
    return r;
  };
  j["per_corpus"] = json::object();
  for (const auto& [label, c] : s.per_corpus) j["per_corpus"][label] = row(c);
  j["total"] = row(s.total);
  j["per_type"] = json::object();
  for (const auto& [code, count] : s.per_type_counts) {
    j["per_type"][code] = {{"count", count}, {"share", s.per_type_shares.at(code)}};
  }
  return j.dump(2);
}

std::vector<AuditIssue> audit_examples(std::span<const ParallelExample> examples) {
  std::vector<AuditIssue> issues;
  for (size_t i = 0; i < examples.size(); ++i) {
    const ParallelExample& e = examples[i];
    auto flag = [&](const std::string& message) { issues.push_back({i, e.id, message}); };

    if (e.tags.size() != e.erroneous.tokens.size()) {
      flag("tag count " + std::to_string(e.tags.size()) + " != token count " +
           std::to_string(e.erroneous.tokens.size()));
      continue;
    }
    const std::set<std::string> injected(e.injected.begin(), e.injected.end());
    bool any_error = false;
    for (const Tag& t : e.tags) {
      if (!t.is_error()) continue;
      any_error = true;
      if (!is_error_code(t.value)) flag("unknown tag '" + t.value + "'");
      if (!injected.count(t.value)) flag("tag " + t.value + " missing from injected list");
    }
    for (const std::string& code : e.injected) {
      if (!is_error_code(code)) flag("unknown injected type '" + code + "'");
    }
    const auto src = e.correct.token_texts();
    const auto tgt = e.erroneous.token_texts();
    if (src == tgt && any_error) {
      flag("erroneous text equals correct text but carries error tags");
      continue;
    }
    // Error spans may cover alignment-equal tokens next to a change (an
    // inserted "cel mai" tags the following adjective too), but a span with
    // no changed or inserted position at all marks untouched text.
    for (const auto& [begin, end] : unsupported_tag_spans(src, tgt, e.tags)) {
      flag("tag " + e.tags[begin].value + " span at positions [" + std::to_string(begin) +
           "," + std::to_string(end) + ") marks unchanged tokens");
    }
  }
  return issues;
}

std::vector<LabeledSentence> read_corpus(const std::string& path,
                                         const std::string& default_label) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open corpus " + path);
  std::vector<LabeledSentence> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::string label = default_label;
    std::string text = line;
    if (const size_t tab = line.find('\t'); tab != std::string::npos) {
      label = line.substr(0, tab);
      text = line.substr(tab + 1);
    }
    out.push_back({std::move(label), tokenize(text)});
  }
  return out;
}

}  // namespace gecforge
