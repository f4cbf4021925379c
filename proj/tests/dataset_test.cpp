#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "gecforge/config.hpp"
#include "gecforge/dataset.hpp"
#include "gecforge/errors.hpp"
#include "test_support.hpp"

using namespace gecforge;

namespace {

const char* kFigErroneous =
    "Încât să, măsurile asiguratorii au un caracter provizoriu, finalitatea lor constând în "
    "garantarea exercităriiobligațiilor cu caracter patrimonial, în cazul soluționării unui "
    "proces peual.";

const char* kFigCorrect =
    "Or, măsurile asiguratorii au un caracter provizoriu, finalitatea lor constând în "
    "garantarea exercitării obligațiilor cu caracter patrimonial, în cazul soluționării unui "
    "proces penal.";

const char* kFigTags =
    "CONJ CONJ O O O O O O O O O O O O O ORTH O O O O O O O O O SPELL O";

ParallelExample reference_example() {
  ParallelExample e;
  e.id = stable_example_id("marcell", 0);
  e.source_corpus = "marcell";
  e.correct = Sentence::from_token_texts(tokenize(kFigCorrect).token_texts());
  e.erroneous = Sentence::from_token_texts(tokenize(kFigErroneous).token_texts());
  std::istringstream tags_in(kFigTags);
  std::string value;
  while (tags_in >> value) e.tags.push_back(Tag{value});
  e.injected = {"CONJ", "ORTH", "SPELL"};
  e.seed = 12345;
  return e;
}

GenerationEngines make_engines(const NoiseEngine& noise, const ConfusionEngine& confusion,
                               const LlmEngine* llm) {
  GenerationEngines engines;
  engines.noise = &noise;
  engines.confusion = &confusion;
  engines.llm = llm;
  for (const ErrorType& e : taxonomy()) engines.methods[e.code] = e.method;
  return engines;
}

std::vector<LabeledSentence> label_all(const std::vector<std::string>& lines,
                                       const std::string& label) {
  std::vector<LabeledSentence> out;
  for (const auto& line : lines) out.push_back({label, tokenize(line)});
  return out;
}

}  // namespace

TEST_CASE("the reference dataset example is internally consistent") {
  const ParallelExample e = reference_example();
  REQUIRE(e.erroneous.tokens.size() == 27);
  REQUIRE(e.tags.size() == 27);
  CHECK(audit_examples(std::vector<ParallelExample>{e}).empty());
}

TEST_CASE("write/read round-trips the reference example exactly") {
  const ParallelExample e = reference_example();
  std::ostringstream buffer;
  write_examples(std::vector<ParallelExample>{e}, buffer);
  std::istringstream in(buffer.str());
  const auto reread = read_examples(in, "buffer");
  REQUIRE(reread.size() == 1);
  CHECK(reread[0] == e);

  // A second write is byte-identical.
  std::ostringstream again;
  write_examples(reread, again);
  CHECK(again.str() == buffer.str());
}

TEST_CASE("empty streams round-trip") {
  std::ostringstream buffer;
  write_examples(std::vector<ParallelExample>{}, buffer);
  CHECK(buffer.str().empty());
  std::istringstream in(buffer.str());
  CHECK(read_examples(in, "buffer").empty());
}

TEST_CASE("a malformed line is reported with its number") {
  const ParallelExample e = reference_example();
  std::ostringstream buffer;
  write_examples(std::vector<ParallelExample>{e}, buffer);
  std::string text = buffer.str();
  text += "{\"id\": \"truncated\n";
  std::istringstream in(text);
  CHECK_THROWS_WITH_AS(read_examples(in, "buffer"), doctest::Contains("buffer:2"), IoError);
}

TEST_CASE("generation dispatches by the planned error's method") {
  NoiseEngine noise;
  noise.word_mu = {1.0, 0.0, 0.0, 0.0};  // always substitute: SPELL or WO
  ConfusionEngine confusion;
  confusion.p = 1.0;
  const GenerationEngines engines = make_engines(noise, confusion, nullptr);

  const std::vector<LabeledSentence> corpus = {
      {"marcell", tokenize("Rămâneți pe telefon.")},
      {"marcell", tokenize("Documentul pleacă spre minister.")},
  };

  ErrorPlan spell_plan;
  spell_plan.assignments = {"SPELL", "SPELL"};
  const auto noisy = generate_dataset(corpus, spell_plan, engines, 7);
  REQUIRE(noisy.size() == 2);
  for (const auto& example : noisy) {
    for (const std::string& code : example.injected) {
      CHECK((code == "SPELL" || code == "WO" || code == "ORTH"));
    }
    CHECK(!example.injected.empty());
  }

  ErrorPlan prep_plan;
  prep_plan.assignments = {"PREP", "PREP"};
  const auto confused = generate_dataset(corpus, prep_plan, engines, 7);
  for (const auto& example : confused) {
    REQUIRE(example.injected.size() == 1);
    CHECK(example.injected[0] == "PREP");
  }

  ErrorPlan punct_plan;
  punct_plan.assignments = {"PUNCT", "PUNCT"};
  const auto punct = generate_dataset(corpus, punct_plan, engines, 7);
  for (const auto& example : punct) {
    for (const std::string& code : example.injected) CHECK(code == "PUNCT");
  }
}

TEST_CASE("generated examples always satisfy the writer invariants") {
  NoiseEngine noise;
  ConfusionEngine confusion;
  MockLlmClient mock;
  LlmEngine llm;
  llm.client = &mock;
  llm.options.retry_backoff_ms = 0;
  llm.ces = CesStore::load(testing::data_path("ces_seed.jsonl"));
  const GenerationEngines engines = make_engines(noise, confusion, &llm);

  const auto corpus = label_all(testing::synth_corpus(120, 40), "marcell");
  const ErrorPlan plan = plan_errors(corpus.size(), default_shares(), 11);
  const auto examples = generate_dataset(corpus, plan, engines, 11);
  REQUIRE(examples.size() == corpus.size());
  CHECK(audit_examples(examples).empty());
  for (const auto& e : examples) {
    CHECK(e.tags.size() == e.erroneous.tokens.size());
    if (e.erroneous.same_tokens(e.correct)) {
      CHECK(e.injected.empty());
    }
  }
}

TEST_CASE("generation is deterministic given corpus, plan and seed") {
  NoiseEngine noise;
  ConfusionEngine confusion;
  MockLlmClient mock;
  LlmEngine llm;
  llm.client = &mock;
  llm.options.retry_backoff_ms = 0;
  llm.ces = CesStore::load(testing::data_path("ces_seed.jsonl"));
  const GenerationEngines engines = make_engines(noise, confusion, &llm);

  const auto corpus = label_all(testing::synth_corpus(100, 8), "marcell");
  const ErrorPlan plan = plan_errors(corpus.size(), default_shares(), 3);

  std::ostringstream first;
  write_examples(generate_dataset(corpus, plan, engines, 3), first);
  std::ostringstream second;
  write_examples(generate_dataset(corpus, plan, engines, 3), second);
  CHECK(first.str() == second.str());
  CHECK(!first.str().empty());
}

TEST_CASE("split honors the fraction and the corpus filter") {
  std::vector<ParallelExample> examples;
  for (size_t i = 0; i < 1000; ++i) {
    ParallelExample e = reference_example();
    e.source_corpus = i < 700 ? "marcell" : "europarl";
    e.id = stable_example_id(e.source_corpus, i);
    examples.push_back(std::move(e));
  }
  SplitSpec spec;
  spec.train_fraction = 0.9;
  spec.test_corpus_filter = "marcell";
  const auto [train, test] = split_examples(examples, spec, 99);
  CHECK(train.size() == 900);
  CHECK(test.size() == 100);
  for (const auto& e : test) CHECK(e.source_corpus == "marcell");

  // Deterministic membership.
  const auto [train2, test2] = split_examples(examples, spec, 99);
  REQUIRE(test2.size() == test.size());
  for (size_t i = 0; i < test.size(); ++i) CHECK(test2[i].id == test[i].id);

  // Union and disjointness.
  CHECK(train.size() + test.size() == examples.size());
  std::set<std::string> train_ids;
  for (const auto& e : train) train_ids.insert(e.id);
  for (const auto& e : test) CHECK(train_ids.count(e.id) == 0);
}

TEST_CASE("split without a filter follows plain ratio arithmetic") {
  std::vector<ParallelExample> examples(1000, reference_example());
  SplitSpec spec;
  spec.train_fraction = 0.9;
  const auto [train, test] = split_examples(examples, spec, 1);
  CHECK(train.size() == 900);
  CHECK(test.size() == 100);
}

TEST_CASE("split reports an unsatisfiable filter") {
  std::vector<ParallelExample> examples;
  for (size_t i = 0; i < 100; ++i) {
    ParallelExample e = reference_example();
    e.source_corpus = i < 10 ? "marcell" : "europarl";
    examples.push_back(std::move(e));
  }
  SplitSpec spec;
  spec.train_fraction = 0.5;
  spec.test_corpus_filter = "marcell";
  CHECK_THROWS_AS(split_examples(examples, spec, 5), ConfigError);
}

TEST_CASE("stats arithmetic on a toy set") {
  ParallelExample e;
  e.id = "x";
  e.source_corpus = "toy";
  e.correct = Sentence::from_token_texts(std::vector<std::string>{"a", "b", "c", "d", "e"});
  e.erroneous = Sentence::from_token_texts(std::vector<std::string>{"a", "B", "c", "d", "e"});
  e.tags = {Tag{"O"}, Tag{"SPELL"}, Tag{"O"}, Tag{"O"}, Tag{"O"}};
  e.injected = {"SPELL"};

  ParallelExample f = e;
  f.correct = Sentence::from_token_texts(std::vector<std::string>{"a", "b", "c"});
  f.erroneous = Sentence::from_token_texts(std::vector<std::string>{"a", "x", "c"});
  f.tags = {Tag{"O"}, Tag{"WO"}, Tag{"O"}};
  f.injected = {"WO"};

  ParallelExample g = e;
  g.correct = Sentence::from_token_texts(std::vector<std::string>{"m", "n"});
  g.erroneous = Sentence::from_token_texts(std::vector<std::string>{"m", "n"});
  g.tags = {Tag{"O"}, Tag{"O"}};
  g.injected = {};

  const DatasetStats s = stats(std::vector<ParallelExample>{e, f, g});
  CHECK(s.total.sentence_count == 3);
  CHECK(s.total.token_count == 10);
  CHECK(s.total.erroneous_token_count == 2);
  CHECK(s.total.error_rate == doctest::Approx(0.2));
  CHECK(s.per_type_counts.at("SPELL") == 1);
  CHECK(s.per_type_counts.at("WO") == 1);
  CHECK(s.per_type_shares.at("SPELL") == doctest::Approx(0.5));
}

TEST_CASE("stats of the reference example alone") {
  const DatasetStats s = stats(std::vector<ParallelExample>{reference_example()});
  CHECK(s.total.token_count == 27);
  CHECK(s.total.erroneous_token_count == 4);
  CHECK(s.per_type_counts.at("CONJ") == 2);
  CHECK(s.per_type_counts.at("ORTH") == 1);
  CHECK(s.per_type_counts.at("SPELL") == 1);
  double share_sum = 0.0;
  for (const auto& [code, share] : s.per_type_shares) share_sum += share;
  CHECK(share_sum == doctest::Approx(1.0));
}

TEST_CASE("the audit flags a tag on an unchanged token") {
  ParallelExample e = reference_example();
  e.tags[3] = Tag{"SPELL"};
  e.injected.push_back("SPELL");
  const auto issues = audit_examples(std::vector<ParallelExample>{e});
  REQUIRE(!issues.empty());
  CHECK(issues[0].message.find("unchanged") != std::string::npos);
}

TEST_CASE("read_corpus accepts plain and labeled lines") {
  const std::string path = "corpus_read_test.txt";
  {
    std::ofstream out(path);
    out << "Prima propoziție de test.\n";
    out << "europarl\tA doua propoziție, cu etichetă.\n";
    out << "\n";
  }
  const auto corpus = read_corpus(path, "marcell");
  REQUIRE(corpus.size() == 2);
  CHECK(corpus[0].source_corpus == "marcell");
  CHECK(corpus[1].source_corpus == "europarl");
  CHECK(corpus[1].sentence.tokens[0].text == "A");
  std::remove(path.c_str());
}

TEST_CASE("config loads defaults, file overrides and --set overrides") {
  const ToolkitConfig defaults = ToolkitConfig::defaults();
  CHECK(defaults.shares.at("SPELL") == doctest::Approx(0.2555));
  CHECK(defaults.confusion_p == doctest::Approx(0.3));
  CHECK(defaults.word_mu == default_mu());

  const std::string path = "toolkit_config_test.json";
  {
    std::ofstream out(path);
    out << R"({"confusion": {"p": 0.4}, "llm": {"model_id": "other-model"}})";
  }
  const std::vector<std::string> overrides = {"confusion.p=0.5", "corpus_label=europarl"};
  const ToolkitConfig config = ToolkitConfig::load(path, overrides);
  CHECK(config.confusion_p == doctest::Approx(0.5));  // --set wins over the file
  CHECK(config.llm.model_id == "other-model");
  CHECK(config.corpus_label == "europarl");
  std::remove(path.c_str());
}

TEST_CASE("config validation rejects broken share tables") {
  const std::string path = "toolkit_config_bad.json";
  {
    std::ofstream out(path);
    out << R"({"shares": {"SPELL": 0.9}})";
  }
  CHECK_THROWS_AS(ToolkitConfig::load(path), ConfigError);
  std::remove(path.c_str());
}

TEST_CASE("method overrides reroute generation") {
  const std::vector<std::string> overrides = {"method.ADJ=NoiseInjection"};
  const ToolkitConfig config = ToolkitConfig::load("", overrides);
  CHECK(config.methods.at("ADJ") == GenMethod::NoiseInjection);
  CHECK(config.methods.at("ADV") == GenMethod::TwoShotLLM);
}
