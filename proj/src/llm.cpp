#include "gecforge/llm.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "gecforge/errors.hpp"

namespace gecforge {

using nlohmann::json;

namespace {

std::string trim(std::string_view s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string strip_quotes(std::string s) {
  static const std::vector<std::pair<std::string, std::string>> quote_pairs = {
      {"\"", "\""}, {"„", "”"}, {"“", "”"}, {"«", "»"}};
  bool stripped = true;
  while (stripped) {
    stripped = false;
    for (const auto& [open, close] : quote_pairs) {
      if (s.size() >= open.size() + close.size() && s.rfind(open, 0) == 0 &&
          s.compare(s.size() - close.size(), close.size(), close) == 0) {
        s = trim(s.substr(open.size(), s.size() - open.size() - close.size()));
        stripped = true;
      }
    }
  }
  return s;
}

std::string lower_ascii(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

// Case-insensitive search for the index marker ("Index:" / "Indice:"),
// returning the position after the colon of the last occurrence.
std::optional<std::pair<size_t, size_t>> find_index_marker(const std::string& text) {
  const std::string haystack = lower_ascii(text);
  std::optional<std::pair<size_t, size_t>> found;
  for (const std::string marker : {"index:", "indice:"}) {
    size_t pos = haystack.find(marker);
    while (pos != std::string::npos) {
      found = {pos, pos + marker.size()};
      pos = haystack.find(marker, pos + 1);
    }
  }
  return found;
}

CesEntry::Origin origin_from_string(const std::string& s) {
  if (s == "seed_book") return CesEntry::Origin::SeedBook;
  if (s == "llm_generated") return CesEntry::Origin::LlmGenerated;
  throw IoError("unknown CES origin '" + s + "'");
}

std::string origin_to_string(CesEntry::Origin origin) {
  return origin == CesEntry::Origin::SeedBook ? "seed_book" : "llm_generated";
}

}  // namespace

void CesEntry::validate() const {
  if (erroneous == correct) {
    throw ValidationError("CES entry has identical erroneous and correct sentences");
  }
  const size_t token_count = tokenize(erroneous).tokens.size();
  if (tags.size() != token_count) {
    throw ValidationError("CES entry has " + std::to_string(tags.size()) + " tags for " +
                          std::to_string(token_count) + " tokens");
  }
  const bool any_error = std::any_of(tags.begin(), tags.end(),
                                     [](const Tag& t) { return t.is_error(); });
  if (!any_error) throw ValidationError("CES entry carries no error tag");
}

CesStore CesStore::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open CES file " + path);
  CesStore store;
  std::string line;
  size_t line_no = 0;
  std::map<std::string, size_t> seed_counts;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    json j;
    try {
      j = json::parse(line);
      CesEntry entry;
      entry.erroneous = j.at("erroneous").get<std::string>();
      entry.correct = j.at("correct").get<std::string>();
      for (const auto& t : j.at("tags")) {
        const std::string value = t.get<std::string>();
        if (value != "O" && !is_error_code(value)) {
          throw IoError("unknown tag '" + value + "'");
        }
        entry.tags.push_back(Tag{value});
      }
      entry.origin = origin_from_string(j.at("origin").get<std::string>());
      const std::string code = j.at("error_type").get<std::string>();
      if (!is_error_code(code)) throw IoError("unknown error type '" + code + "'");
      entry.validate();
      auto& set = store.sets[code];
      set.error_type = code;
      set.entries.push_back(std::move(entry));
      if (set.entries.back().origin == CesEntry::Origin::SeedBook) seed_counts[code] += 1;
    } catch (const json::exception& e) {
      throw IoError(path + ":" + std::to_string(line_no) + ": " + e.what());
    } catch (const std::runtime_error& e) {
      throw IoError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  for (auto& [code, set] : store.sets) set.initial_size = seed_counts[code];
  return store;
}

void CesStore::save(const std::string& path) const {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write CES file " + path);
  for (const auto& [code, set] : sets) {
    for (const CesEntry& entry : set.entries) {
      json j;
      j["error_type"] = code;
      j["erroneous"] = entry.erroneous;
      j["correct"] = entry.correct;
      json tags = json::array();
      for (const Tag& t : entry.tags) tags.push_back(t.value);
      j["tags"] = std::move(tags);
      j["origin"] = origin_to_string(entry.origin);
      out << j.dump() << "\n";
    }
  }
}

CorruptionExampleSet& CesStore::require(const std::string& code) {
  auto it = sets.find(code);
  if (it == sets.end()) throw ConfigError("no CES loaded for error type " + code);
  return it->second;
}

std::string LlmRequest::stable_key() const {
  char temp[32];
  std::snprintf(temp, sizeof(temp), "%.4f", temperature);
  std::string blob = model_id;
  blob.push_back('\n');
  blob += temp;
  blob.push_back('\n');
  blob += prompt;
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(fnv1a64(blob)));
  return hex;
}

FixtureLlmClient FixtureLlmClient::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open fixture file " + path);
  FixtureLlmClient client;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      json j = json::parse(line);
      client.add(j.at("key").get<std::string>(), j.at("text").get<std::string>());
    } catch (const json::exception& e) {
      throw IoError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return client;
}

void FixtureLlmClient::add(const std::string& key, const std::string& text) {
  responses_[key] = text;
}

LlmResponse FixtureLlmClient::complete(const LlmRequest& request) {
  auto it = responses_.find(request.stable_key());
  if (it == responses_.end()) {
    throw LlmTransportError("no fixture entry for request key " + request.stable_key());
  }
  return {it->second};
}

namespace {

// Last <<...>> block of the prompt, i.e. the sentence to corrupt.
std::optional<std::string> extract_target_sentence(const std::string& prompt) {
  const size_t open = prompt.rfind("<<");
  if (open == std::string::npos) return std::nullopt;
  const size_t close = prompt.find(">>", open + 2);
  if (close == std::string::npos) return std::nullopt;
  return strip_quotes(trim(prompt.substr(open + 2, close - open - 2)));
}

std::string mangle_word(const std::string& word) {
  auto cps = utf8_codepoints(word);
  if (cps.size() >= 2 && cps[cps.size() - 1] != cps[cps.size() - 2]) {
    std::swap(cps[cps.size() - 1], cps[cps.size() - 2]);
    std::string out;
    for (const auto& c : cps) out += c;
    return out;
  }
  return word + "ă";
}

}  // namespace

LlmResponse MockLlmClient::complete(const LlmRequest& request) {
  const auto sentence_text = extract_target_sentence(request.prompt);
  if (!sentence_text) {
    throw LlmTransportError("mock client found no <<sentence>> block in the prompt");
  }
  std::string code;
  size_t best_len = 0;
  for (const ErrorType& e : taxonomy()) {
    if (e.method != GenMethod::ZeroShotLLM && e.method != GenMethod::TwoShotLLM) continue;
    const std::string& phrase = error_instruction(e.code);
    if (request.prompt.find(phrase) != std::string::npos && phrase.size() > best_len) {
      code = e.code;
      best_len = phrase.size();
    }
  }

  const Sentence sentence = tokenize(*sentence_text);
  // Candidate content words, longest first so the pick is stable.
  std::vector<size_t> candidates;
  for (size_t i = 0; i < sentence.tokens.size(); ++i) {
    if (sentence.tokens[i].kind == TokenKind::Word &&
        utf8_codepoints(sentence.tokens[i].text).size() >= 4) {
      candidates.push_back(i);
    }
  }
  if (candidates.empty()) return {"NO"};
  std::stable_sort(candidates.begin(), candidates.end(), [&](size_t a, size_t b) {
    return utf8_codepoints(sentence.tokens[a].text).size() >
           utf8_codepoints(sentence.tokens[b].text).size();
  });

  std::vector<std::string> texts = sentence.token_texts();
  std::vector<int64_t> indices;
  const size_t pick = candidates[0];
  if (code == "ADJ:FORM") {
    texts.insert(texts.begin() + static_cast<ptrdiff_t>(pick), {"cel", "mai"});
    indices = {static_cast<int64_t>(pick), static_cast<int64_t>(pick) + 1,
               static_cast<int64_t>(pick) + 2};
  } else if (code == "NOUN:POSS") {
    texts.insert(texts.begin() + static_cast<ptrdiff_t>(pick), "lui");
    indices = {static_cast<int64_t>(pick), static_cast<int64_t>(pick) + 1};
  } else {
    const size_t mangles = std::min<size_t>(3, candidates.size());
    for (size_t k = 0; k < mangles; ++k) {
      texts[candidates[k]] = mangle_word(texts[candidates[k]]);
      indices.push_back(static_cast<int64_t>(candidates[k]));
    }
    std::sort(indices.begin(), indices.end());
  }

  std::ostringstream out;
  out << "\"" << detokenize_texts(texts) << "\"\n\nIndex: [";
  for (size_t i = 0; i < indices.size(); ++i) {
    if (i > 0) out << ", ";
    out << indices[i];
  }
  out << "]";
  return {out.str()};
}

RecordingLlmClient::RecordingLlmClient(LlmClient& inner, std::string path)
    : inner_(inner), path_(std::move(path)) {
  std::ofstream out(path_, std::ios::trunc);
  if (!out) throw IoError("cannot write fixture file " + path_);
}

LlmResponse RecordingLlmClient::complete(const LlmRequest& request) {
  LlmResponse response = inner_.complete(request);
  json j;
  j["key"] = request.stable_key();
  j["prompt"] = request.prompt;
  j["text"] = response.text;
  std::ofstream out(path_, std::ios::app);
  out << j.dump() << "\n";
  return response;
}

namespace {

const std::map<std::string, std::string>& instruction_table() {
  static const std::map<std::string, std::string> table = {
      {"ADJ",
       "choose an inappropriate adjective for the sentence context, such that an erroneous "
       "sentence is created"},
      {"ADJ:FORM", "you will have to change the degree of an adjective erroneously"},
      {"ADV",
       "use an adverb erroneously in a sentence, such that an erroneous sentence is created"},
      {"MORPH",
       "replace a word with a misused word stemming from the same root, such that an erroneous "
       "sentence is created"},
      {"NOUN",
       "use a noun inappropriately in a sentence, such that an erroneous sentence is created"},
      {"NOUN:INFL",
       "change the inflection of one of the nouns in a sentence, in order for the sentence to "
       "be grammatically incorrect"},
      {"NOUN:NUM",
       "change the number of a noun erroneously, such that an erroneous sentence is created"},
      {"NOUN:POSS",
       "create a disagreement between a noun and its possessive article, such that an erroneous "
       "sentence is created"},
      {"VERB",
       "choose an inappropriate verb for the sentence context, such that an erroneous sentence "
       "is created"},
      {"VERB:FORM",
       "choose an erroneous form of a verb in a sentence, such that an erroneous sentence is "
       "created"},
      {"VERB:SVA",
       "create a disagreement between a verb and a subject in a sentence, such that an "
       "erroneous sentence is created"},
      {"VERB:TENSE",
       "change the tense of a verb so that it disagrees with the rest of the phrase, such that "
       "an erroneous sentence is created"},
  };
  return table;
}

}  // namespace

const std::string& error_instruction(const std::string& code) {
  const auto& table = instruction_table();
  auto it = table.find(code);
  if (it == table.end()) {
    throw UsageError("no LLM instruction phrase for error type " + code);
  }
  return it->second;
}

std::string build_zero_shot_prompt(const ErrorType& error, const std::string& sentence) {
  if (error.method != GenMethod::ZeroShotLLM) {
    throw UsageError("error type " + error.code + " is not generated by zero-shot prompting");
  }
  std::string out =
      "You are a grammar assistant tasked with introducing common unacceptable errors within a "
      "correct Romanian language sentence. For this task, ";
  out += error_instruction(error.code);
  out += " in the following sentence: <<";
  out += sentence;
  out +=
      ">>. Think very carefully about the task at hand, and analyze each part of speech in "
      "detail. If the specified part of speech does not exist in the sentence, strictly reply "
      "with NO. Otherwise, reply strictly with the erroneous sentence, followed by Index: and "
      "the positions of the words you have changed.";
  return out;
}

std::string build_two_shot_prompt(const ErrorType& error, const std::string& sentence,
                                  const CesEntry& ex1, const CesEntry& ex2) {
  if (error.method != GenMethod::TwoShotLLM) {
    throw UsageError("error type " + error.code + " is not generated by two-shot prompting");
  }
  if (ex1 == ex2) throw UsageError("two-shot prompt requires two distinct examples");
  std::string out =
      "You are a grammar assistant tasked with introducing common unacceptable errors in a "
      "correct Romanian sentence. For this task, ";
  out += error_instruction(error.code);
  out += ".\n\nFor example, the sentence <<";
  out += ex1.correct;
  out += ">> will be turned into <<";
  out += ex1.erroneous;
  out += ">>\n\nFor example, the sentence <<";
  out += ex2.correct;
  out += ">> will be turned into <<";
  out += ex2.erroneous;
  out += ">>\n\nSo, the sentence <<\"";
  out += sentence;
  out +=
      "\">> will be turned into ANSWER.\n\nThink very carefully about the task at hand, and "
      "analyze each part of speech in detail. If the specified part of speech does not exist "
      "in the sentence, strictly reply with NO. Otherwise, reply strictly with the erroneous "
      "sentence, marked with ANSWER, followed by Index: and the positions of the words you "
      "have changed.";
  return out;
}

ParsedCorruption parse_llm_response(const std::string& text) {
  const std::string trimmed = trim(text);
  if (lower_ascii(trimmed) == "no") {
    ParsedCorruption out;
    out.verdict = ParsedCorruption::Verdict::NoPartOfSpeech;
    return out;
  }
  const auto marker = find_index_marker(trimmed);
  if (!marker) throw ParseError("response has no Index: marker", text);

  std::string sentence = trim(trimmed.substr(0, marker->first));
  if (sentence.rfind("ANSWER", 0) == 0) {
    sentence = trim(sentence.substr(6));
    if (!sentence.empty() && sentence.front() == ':') sentence = trim(sentence.substr(1));
  }
  sentence = strip_quotes(std::move(sentence));
  if (sentence.empty()) throw ParseError("response has an empty sentence", text);

  const std::string rest = trimmed.substr(marker->second);
  const size_t open = rest.find('[');
  const size_t close = rest.find(']', open == std::string::npos ? 0 : open);
  if (open == std::string::npos || close == std::string::npos) {
    throw ParseError("response has no bracketed index list", text);
  }
  std::vector<int64_t> indices;
  std::string body = rest.substr(open + 1, close - open - 1);
  std::istringstream in(body);
  std::string piece;
  while (std::getline(in, piece, ',')) {
    const std::string item = trim(piece);
    if (item.empty()) {
      if (indices.empty() && trim(body).empty()) break;  // "[]"
      throw ParseError("empty element in index list", text);
    }
    size_t consumed = 0;
    long long value = 0;
    try {
      value = std::stoll(item, &consumed);
    } catch (const std::exception&) {
      throw ParseError("non-integer index '" + item + "'", text);
    }
    if (consumed != item.size()) throw ParseError("non-integer index '" + item + "'", text);
    if (value < 0) throw ParseError("negative index " + std::to_string(value), text);
    indices.push_back(value);
  }
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());

  ParsedCorruption out;
  out.erroneous_sentence = std::move(sentence);
  out.indices = std::move(indices);
  out.verdict = ParsedCorruption::Verdict::Corrupted;
  return out;
}

std::vector<std::string> validate_corruption(const Sentence& correct,
                                             const ParsedCorruption& parsed,
                                             const ErrorType&) {
  if (parsed.verdict != ParsedCorruption::Verdict::Corrupted) {
    throw UsageError("validate_corruption requires a Corrupted verdict");
  }
  std::vector<std::string> failures;
  const Sentence erroneous = tokenize(parsed.erroneous_sentence);
  const auto src = correct.token_texts();
  const auto tgt = erroneous.token_texts();
  if (src == tgt) {
    failures.push_back("no modification");
    return failures;
  }
  bool indices_ok = true;
  for (int64_t idx : parsed.indices) {
    if (idx < 0 || static_cast<size_t>(idx) >= tgt.size()) {
      failures.push_back("index " + std::to_string(idx) + " out of range");
      indices_ok = false;
    }
  }
  const std::vector<size_t> changed = changed_target_positions(src, tgt);
  const std::set<int64_t> index_set(parsed.indices.begin(), parsed.indices.end());
  if (indices_ok) {
    for (size_t pos : changed) {
      if (!index_set.count(static_cast<int64_t>(pos))) {
        failures.push_back("token at position " + std::to_string(pos) +
                           " changed but is not in the index list");
      }
    }
  }
  const bool any_indexed_change =
      std::any_of(changed.begin(), changed.end(), [&](size_t pos) {
        return index_set.count(static_cast<int64_t>(pos)) > 0;
      });
  if (!any_indexed_change) failures.push_back("no indexed token differs from the source");
  return failures;
}

LlmOutcome generate_llm_example(LlmClient& client, const CorruptionExampleSet& ces,
                                const ErrorType& error, const Sentence& sentence,
                                const LlmOptions& options, Rng& rng) {
  std::string prompt;
  if (error.method == GenMethod::TwoShotLLM) {
    if (ces.entries.size() < 2) {
      throw UsageError("CES for " + error.code + " has fewer than 2 entries");
    }
    // Two distinct draws, embedded in CES order.
    const size_t n = ces.entries.size();
    size_t a = rng.below(n);
    size_t b = rng.below(n - 1);
    if (b >= a) ++b;
    const size_t lo = std::min(a, b);
    const size_t hi = std::max(a, b);
    prompt = build_two_shot_prompt(error, sentence.raw, ces.entries[lo], ces.entries[hi]);
  } else if (error.method == GenMethod::ZeroShotLLM) {
    prompt = build_zero_shot_prompt(error, sentence.raw);
  } else {
    throw UsageError("error type " + error.code + " is not LLM-generated");
  }

  const LlmRequest request{options.model_id, options.temperature, prompt};
  std::string last_failure = "no attempts made";
  for (int attempt = 1; attempt <= std::max(1, options.max_retries); ++attempt) {
    if (attempt > 1 && options.retry_backoff_ms > 0) {
      std::this_thread::sleep_for(
          std::chrono::milliseconds(options.retry_backoff_ms << (attempt - 2)));
    }
    ParsedCorruption parsed;
    try {
      const LlmResponse response = client.complete(request);
      parsed = parse_llm_response(response.text);
    } catch (const ParseError& e) {
      last_failure = std::string("parse error: ") + e.what();
      continue;
    } catch (const LlmTransportError& e) {
      last_failure = std::string("transport error: ") + e.what();
      continue;
    }
    if (parsed.verdict == ParsedCorruption::Verdict::NoPartOfSpeech) {
      return NoPartOfSpeech{};
    }
    const Sentence erroneous =
        Sentence::from_token_texts(tokenize(parsed.erroneous_sentence).token_texts());
    if (erroneous.same_tokens(sentence)) {
      last_failure = "response left the sentence unmodified";
      continue;
    }
    const auto failures = validate_corruption(sentence, parsed, error);
    TagSequence tags;
    if (failures.empty()) {
      tags = indices_to_tags(erroneous.tokens.size(), parsed.indices, error);
    } else {
      // The index list is unreliable; realign instead of trusting it.
      tags = diff_tags(sentence, erroneous, error);
    }
    ParallelExample example;
    example.correct = sentence;
    example.erroneous = std::move(erroneous);
    example.tags = std::move(tags);
    example.injected = {error.code};
    return example;
  }
  return GenerationFailure{last_failure};
}

LlmOutcome LlmEngine::generate(const ErrorType& error, const Sentence& sentence,
                               Rng& rng) const {
  if (client == nullptr) throw ConfigError("LLM engine has no client configured");
  static const CorruptionExampleSet empty_set;
  const CorruptionExampleSet* set = &empty_set;
  if (error.method == GenMethod::TwoShotLLM) {
    auto it = ces.sets.find(error.code);
    if (it == ces.sets.end() || it->second.entries.size() < 2) {
      return GenerationFailure{"no usable CES for " + error.code +
                               " (need at least 2 entries)"};
    }
    set = &it->second;
  }
  try {
    return generate_llm_example(*client, *set, error, sentence, options, rng);
  } catch (const UsageError& e) {
    return GenerationFailure{e.what()};
  }
}

HttpLlmClient::HttpLlmClient(std::string endpoint, std::string auth_env)
    : endpoint_(std::move(endpoint)), auth_env_(std::move(auth_env)) {
  if (endpoint_.empty()) throw ConfigError("LLM endpoint is empty");
}

LlmResponse HttpLlmClient::complete(const LlmRequest& request) {
  std::string base = endpoint_;
  std::string path = "/";
  const size_t scheme = endpoint_.find("://");
  const size_t slash = endpoint_.find('/', scheme == std::string::npos ? 0 : scheme + 3);
  if (slash != std::string::npos) {
    base = endpoint_.substr(0, slash);
    path = endpoint_.substr(slash);
  }
  httplib::Client client(base);
  client.set_connection_timeout(10, 0);
  client.set_read_timeout(120, 0);
  httplib::Headers headers;
  if (!auth_env_.empty()) {
    if (const char* token = std::getenv(auth_env_.c_str())) {
      headers.emplace("Authorization", std::string("Bearer ") + token);
    }
  }
  json body;
  body["model_id"] = request.model_id;
  body["prompt"] = request.prompt;
  body["temperature"] = request.temperature;
  auto res = client.Post(path, headers, body.dump(), "application/json");
  if (!res) {
    throw LlmTransportError("POST " + endpoint_ + " failed: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw LlmTransportError("POST " + endpoint_ + " returned status " +
                            std::to_string(res->status));
  }
  try {
    return {json::parse(res->body).at("text").get<std::string>()};
  } catch (const json::exception& e) {
    throw LlmTransportError(std::string("malformed response body: ") + e.what());
  }
}

bool StreamReviewer::accept(const CesEntry& candidate) {
  out_ << "correct:   " << candidate.correct << "\n";
  out_ << "erroneous: " << candidate.erroneous << "\n";
  out_ << "tags:     ";
  for (const Tag& t : candidate.tags) out_ << " " << t.value;
  out_ << "\n[a]ccept / [r]eject? " << std::flush;
  std::string line;
  if (!std::getline(in_, line)) return false;
  const std::string answer = lower_ascii(trim(line));
  return answer == "a" || answer == "accept" || answer == "y" || answer == "yes";
}

EnrichResult enrich_ces(LlmClient& client, CorruptionExampleSet ces, const ErrorType& error,
                        std::span<const Sentence> corpus, Reviewer& reviewer,
                        const LlmOptions& options, uint64_t seed) {
  EnrichResult result;
  for (size_t i = 0; i < corpus.size(); ++i) {
    if (ces.at_capacity()) break;
    Rng rng(derive_seed(seed, i));
    LlmOutcome outcome = generate_llm_example(client, ces, error, corpus[i], options, rng);
    auto* example = std::get_if<ParallelExample>(&outcome);
    if (example == nullptr) continue;
    CesEntry candidate;
    candidate.erroneous = example->erroneous.raw;
    candidate.correct = example->correct.raw;
    candidate.tags = example->tags;
    candidate.origin = CesEntry::Origin::LlmGenerated;
    try {
      candidate.validate();
    } catch (const ValidationError&) {
      continue;  // e.g. a deletion-only corruption with no taggable token
    }
    result.candidates_generated += 1;
    if (reviewer.accept(candidate)) {
      ces.entries.push_back(std::move(candidate));
      result.accepted += 1;
    }
  }
  result.reached_target = ces.at_capacity();
  result.ces = std::move(ces);
  return result;
}

}  // namespace gecforge
