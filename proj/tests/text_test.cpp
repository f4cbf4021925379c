#include <doctest.h>

#include "gecforge/errors.hpp"
#include "gecforge/text.hpp"
#include "test_support.hpp"

using namespace gecforge;

namespace {

const char* kOrdinCorrupted =
    "Aprobată prin ORDINUL nr. 304 din 19 octombrie 2020, publicat în Monitorul cel mai "
    "Oficial al României, Partea I, nr. 1026 din 4 noiembrie 2020.";

std::vector<std::string> texts_of(const Sentence& s) { return s.token_texts(); }

}  // namespace

TEST_CASE("tokenize splits abbreviation periods and matches the 0-based index convention") {
  const Sentence s = tokenize(kOrdinCorrupted);
  REQUIRE(s.tokens.size() == 31);
  CHECK(s.tokens[14].text == "cel");
  CHECK(s.tokens[15].text == "mai");
  CHECK(s.tokens[16].text == "Oficial");
  CHECK(s.tokens[3].text == "nr");
  CHECK(s.tokens[4].text == ".");
  CHECK(s.tokens[5].text == "304");
  CHECK(s.tokens[5].kind == TokenKind::Numeral);
  CHECK(s.tokens[4].kind == TokenKind::Punct);
  CHECK(s.tokens[0].kind == TokenKind::Word);
}

TEST_CASE("tokenize keeps hyphenated clitics whole") {
  const Sentence s = tokenize("Mi s-a făcut vrăji.");
  CHECK(texts_of(s) == std::vector<std::string>{"Mi", "s-a", "făcut", "vrăji", "."});
}

TEST_CASE("tokenize of empty and whitespace-only input") {
  CHECK(tokenize("").tokens.empty());
  CHECK(tokenize("   \t ").tokens.empty());
}

TEST_CASE("tokenize spans are strictly increasing and slice the raw text") {
  const Sentence s = tokenize(kOrdinCorrupted);
  size_t prev_end = 0;
  for (const Token& t : s.tokens) {
    CHECK(t.begin >= prev_end);
    CHECK(t.begin < t.end);
    CHECK(s.raw.substr(t.begin, t.end - t.begin) == t.text);
    prev_end = t.end;
  }
}

TEST_CASE("table 5 sentence tokenizes to 28 tokens with the verb at index 11") {
  const Sentence s = tokenize(
      "La data de 19 februarie 2018, propunerea legislativă a fost prezentată în Biroul "
      "permanent al Camerei Deputaților și transmisă pentru raport și avize comisiilor de "
      "specialitate.");
  REQUIRE(s.tokens.size() == 28);
  CHECK(s.tokens[11].text == "prezentată");
}

TEST_CASE("detokenize spacing") {
  const std::vector<std::string> tokens = {"Unde", "mergeți", ",", "doamnă", "?"};
  CHECK(detokenize_texts(tokens) == "Unde mergeți, doamnă?");
  CHECK(detokenize_texts({}) == "");
}

TEST_CASE("tokenize/detokenize round-trips normalized corpus lines") {
  const auto lines = testing::synth_corpus(100, 11);
  for (const std::string& line : lines) {
    const Sentence s = tokenize(line);
    CHECK(detokenize(s.tokens) == line);
  }
}

TEST_CASE("Sentence::from_token_texts reconstructs raw text and spans") {
  const auto lines = testing::synth_corpus(20, 5);
  for (const std::string& line : lines) {
    const Sentence direct = tokenize(line);
    const Sentence rebuilt = Sentence::from_token_texts(direct.token_texts());
    CHECK(rebuilt == direct);
  }
}

TEST_CASE("indices_to_tags places the error at the listed positions") {
  const ErrorType& adj_form = *find_error_type("ADJ:FORM");
  const ErrorType& sva = *find_error_type("VERB:SVA");

  const std::vector<int64_t> ordin_indices = {14, 15, 16};
  TagSequence tags = indices_to_tags(31, ordin_indices, adj_form);
  REQUIRE(tags.size() == 31);
  for (size_t i = 0; i < tags.size(); ++i) {
    if (i >= 14 && i <= 16) {
      CHECK(tags[i].value == "ADJ:FORM");
    } else {
      CHECK(tags[i].value == "O");
    }
  }

  const std::vector<int64_t> sva_indices = {11};
  tags = indices_to_tags(28, sva_indices, sva);
  CHECK(tags[11].value == "VERB:SVA");
  CHECK(std::count_if(tags.begin(), tags.end(), [](const Tag& t) { return t.is_error(); }) == 1);

  tags = indices_to_tags(5, std::vector<int64_t>{}, sva);
  CHECK(std::all_of(tags.begin(), tags.end(), [](const Tag& t) { return !t.is_error(); }));
}

TEST_CASE("indices_to_tags rejects out-of-range indices by name") {
  const ErrorType& sva = *find_error_type("VERB:SVA");
  const std::vector<int64_t> bad = {99};
  CHECK_THROWS_WITH_AS(indices_to_tags(20, bad, sva),
                       doctest::Contains("99"), ValidationError);
}

TEST_CASE("indices_to_tags round-trips through the non-O positions") {
  Rng rng(77);
  const ErrorType& spell = *find_error_type("SPELL");
  for (int round = 0; round < 50; ++round) {
    const size_t count = 1 + rng.below(30);
    std::vector<int64_t> indices;
    for (size_t i = 0; i < count; ++i) {
      if (rng.chance(0.3)) indices.push_back(static_cast<int64_t>(i));
    }
    const TagSequence tags = indices_to_tags(count, indices, spell);
    std::vector<int64_t> recovered;
    for (size_t i = 0; i < tags.size(); ++i) {
      if (tags[i].is_error()) recovered.push_back(static_cast<int64_t>(i));
    }
    CHECK(recovered == indices);
  }
}

TEST_CASE("diff_tags on identical sentences is all O") {
  const ErrorType& spell = *find_error_type("SPELL");
  for (const std::string& line : testing::synth_corpus(10, 3)) {
    const Sentence s = tokenize(line);
    const TagSequence tags = diff_tags(s, s, spell);
    REQUIRE(tags.size() == s.tokens.size());
    CHECK(std::all_of(tags.begin(), tags.end(), [](const Tag& t) { return !t.is_error(); }));
  }
}

TEST_CASE("diff_tags marks swapped words as a contiguous span") {
  const ErrorType& wo = *find_error_type("WO");
  const TagSequence tags = diff_tags(tokenize("Au mai rămas"), tokenize("Mai au rămas"), wo);
  REQUIRE(tags.size() == 3);
  CHECK(tags[0].value == "WO");
  CHECK(tags[1].value == "WO");
  CHECK(tags[2].value == "O");
}

TEST_CASE("diff_tags marks a single substitution") {
  const ErrorType& spell = *find_error_type("SPELL");
  const TagSequence tags = diff_tags(tokenize("a b c d"), tokenize("a x c d"), spell);
  CHECK(tags == TagSequence{Tag{"O"}, Tag{"SPELL"}, Tag{"O"}, Tag{"O"}});
}

TEST_CASE("align_tokens cost matches the brute-force oracle on random pairs") {
  Rng rng(123);
  const std::vector<std::string> alphabet = {"a", "b", "c", "x", "y"};
  for (int round = 0; round < 100; ++round) {
    std::vector<std::string> src;
    std::vector<std::string> tgt;
    const size_t ns = rng.below(8);
    const size_t nt = rng.below(8);
    for (size_t i = 0; i < ns; ++i) src.push_back(alphabet[rng.below(alphabet.size())]);
    for (size_t i = 0; i < nt; ++i) tgt.push_back(alphabet[rng.below(alphabet.size())]);

    int cost = 0;
    for (AlignOp op : align_tokens(src, tgt)) {
      if (op != AlignOp::Equal) ++cost;
    }
    CHECK(cost == testing::brute_force_edit_cost(src, tgt));
  }
}

TEST_CASE("classify_token distinguishes words, punctuation and numerals") {
  CHECK(classify_token("2020") == TokenKind::Numeral);
  CHECK(classify_token("3,14") == TokenKind::Numeral);
  CHECK(classify_token(";") == TokenKind::Punct);
  CHECK(classify_token("s-a") == TokenKind::Word);
  CHECK(classify_token("mașină") == TokenKind::Word);
}
