#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "gecforge/errors.hpp"
#include "gecforge/eval.hpp"
#include "test_support.hpp"

using namespace gecforge;

namespace {

TagSequence tags_of(const std::vector<std::string>& values) {
  TagSequence out;
  for (const auto& v : values) out.push_back(Tag{v});
  return out;
}

}  // namespace

TEST_CASE("f_beta values") {
  CHECK(f_beta(1.0, 1.0, 0.5) == doctest::Approx(1.0));
  CHECK(f_beta(0.8, 0.5, 0.5) == doctest::Approx(0.5 / 0.7));
  CHECK(f_beta(0.0, 0.0, 0.5) == 0.0);
  Rng rng(8);
  for (int i = 0; i < 50; ++i) {
    const double p = rng.next_double();
    const double beta = 0.1 + rng.next_double() * 3.0;
    if (p > 0.0) CHECK(f_beta(p, p, beta) == doctest::Approx(p));
  }
}

TEST_CASE("f_beta is monotone in precision and recall") {
  Rng rng(15);
  for (int i = 0; i < 200; ++i) {
    const double p = rng.next_double();
    const double r = rng.next_double();
    const double dp = rng.next_double() * (1.0 - p);
    const double dr = rng.next_double() * (1.0 - r);
    CHECK(f_beta(p + dp, r, 0.5) >= f_beta(p, r, 0.5) - 1e-12);
    CHECK(f_beta(p, r + dr, 0.5) >= f_beta(p, r, 0.5) - 1e-12);
  }
}

TEST_CASE("score_ged perfect single-tag prediction") {
  const std::vector<TagSequence> pred = {tags_of({"O", "PUNCT"})};
  const GedReport report = score_ged(pred, pred);
  CHECK(report.per_tag.at("PUNCT").tp == 1);
  CHECK(report.per_tag_metrics.at("PUNCT").precision == doctest::Approx(1.0));
  CHECK(report.per_tag_metrics.at("PUNCT").recall == doctest::Approx(1.0));
  CHECK(report.per_tag_metrics.at("PUNCT").f_half == doctest::Approx(1.0));
  CHECK(report.aggregate_metrics.f_half == doctest::Approx(1.0));
}

TEST_CASE("score_ged tallies a mismatched prediction as FP plus FN") {
  const std::vector<TagSequence> pred = {tags_of({"SPELL", "O"})};
  const std::vector<TagSequence> gold = {tags_of({"ORTH", "ORTH"})};
  const GedReport report = score_ged(pred, gold);
  CHECK(report.per_tag.at("SPELL").fp == 1);
  CHECK(report.per_tag.at("SPELL").tp == 0);
  CHECK(report.per_tag.at("ORTH").fn == 2);
  CHECK(report.aggregate_metrics.precision == doctest::Approx(0.0));
  CHECK(report.aggregate_metrics.recall == doctest::Approx(0.0));
}

TEST_CASE("score_ged mixed hit and miss") {
  const std::vector<TagSequence> pred = {tags_of({"O", "PUNCT", "O"})};
  const std::vector<TagSequence> gold = {tags_of({"O", "PUNCT", "SPELL"})};
  const GedReport report = score_ged(pred, gold);
  CHECK(report.per_tag.at("PUNCT").tp == 1);
  CHECK(report.per_tag.at("SPELL").fn == 1);
  CHECK(report.aggregate_metrics.precision == doctest::Approx(1.0));
  CHECK(report.aggregate_metrics.recall == doctest::Approx(0.5));
  CHECK(report.aggregate_metrics.f_half == doctest::Approx(5.0 / 6.0));
}

TEST_CASE("score_ged aggregate counts equal the per-tag sums") {
  const std::vector<TagSequence> pred = {tags_of({"SPELL", "O", "WO", "WO"}),
                                         tags_of({"O", "ORTH"})};
  const std::vector<TagSequence> gold = {tags_of({"SPELL", "PUNCT", "WO", "O"}),
                                         tags_of({"ORTH", "ORTH"})};
  const GedReport report = score_ged(pred, gold);
  TagCounts sum;
  for (const auto& [tag, counts] : report.per_tag) {
    sum.tp += counts.tp;
    sum.fp += counts.fp;
    sum.fn += counts.fn;
  }
  CHECK(sum == report.aggregate);
}

TEST_CASE("score_ged rejects mismatched lengths naming the example") {
  const std::vector<TagSequence> pred = {tags_of({"O"})};
  const std::vector<TagSequence> gold = {tags_of({"O", "O"})};
  CHECK_THROWS_WITH_AS(score_ged(pred, gold), doctest::Contains("example 0"), ScoringError);
}

TEST_CASE("score_ged on identical non-trivial sequences is perfect") {
  Rng rng(31);
  const std::vector<std::string> pool = {"O", "SPELL", "WO", "PUNCT", "ORTH"};
  for (int round = 0; round < 20; ++round) {
    std::vector<TagSequence> seqs(1);
    bool any_error = false;
    const size_t len = 1 + rng.below(12);
    for (size_t i = 0; i < len; ++i) {
      const std::string& v = pool[rng.below(pool.size())];
      any_error = any_error || v != "O";
      seqs[0].push_back(Tag{v});
    }
    if (!any_error) seqs[0][0] = Tag{"SPELL"};
    const GedReport report = score_ged(seqs, seqs);
    CHECK(report.aggregate_metrics.precision == doctest::Approx(1.0));
    CHECK(report.aggregate_metrics.recall == doctest::Approx(1.0));
    CHECK(report.aggregate_metrics.f_half == doctest::Approx(1.0));
  }
}

TEST_CASE("extract_edits basic shapes") {
  CHECK(extract_edits(tokenize("La fel ca ieri."), tokenize("La fel ca ieri.")).empty());

  const auto sub = extract_edits(tokenize("a b c"), tokenize("a x c"));
  REQUIRE(sub.size() == 1);
  CHECK(sub[0] == Edit{1, 2, {"x"}});

  const auto merged = extract_edits(tokenize("nu mai zece"), tokenize("numai zece"));
  REQUIRE(merged.size() == 1);
  CHECK(merged[0] == Edit{0, 2, {"numai"}});
}

TEST_CASE("extract_edits passes the patch round-trip and cost oracle on random pairs") {
  Rng rng(404);
  const std::vector<std::string> alphabet = {"a", "b", "c", "x", "y"};
  for (int round = 0; round < 250; ++round) {
    std::vector<std::string> src;
    std::vector<std::string> tgt;
    const size_t ns = rng.below(11);
    const size_t nt = rng.below(11);
    for (size_t i = 0; i < ns; ++i) src.push_back(alphabet[rng.below(alphabet.size())]);
    for (size_t i = 0; i < nt; ++i) tgt.push_back(alphabet[rng.below(alphabet.size())]);

    const Sentence source = Sentence::from_token_texts(src);
    const Sentence target = Sentence::from_token_texts(tgt);
    const auto edits = extract_edits(source, target);

    // Patch round-trip.
    CHECK(apply_edits(src, edits) == tgt);

    // Spans sorted and non-overlapping.
    size_t cursor = 0;
    for (const Edit& e : edits) {
      CHECK(e.src_begin >= cursor);
      CHECK(e.src_begin <= e.src_end);
      cursor = e.src_end;
    }

    // Alignment cost equals the brute-force minimum.
    int cost = 0;
    for (AlignOp op : align_tokens(src, tgt)) {
      if (op != AlignOp::Equal) ++cost;
    }
    CHECK(cost == testing::brute_force_edit_cost(src, tgt));
  }
}

TEST_CASE("score_gec perfect and vacuous conventions") {
  const std::vector<Sentence> src = {tokenize("a b c"), tokenize("d e")};
  const std::vector<Sentence> ref = {tokenize("a x c"), tokenize("d e f")};

  const GecReport perfect = score_gec(src, ref, ref);
  CHECK(perfect.metrics.precision == doctest::Approx(1.0));
  CHECK(perfect.metrics.recall == doctest::Approx(1.0));
  CHECK(perfect.metrics.f_half == doctest::Approx(1.0));

  const GecReport vacuous = score_gec(src, src, ref);
  CHECK(vacuous.predicted == 0);
  CHECK(vacuous.gold == 2);
  CHECK(vacuous.metrics.precision == doctest::Approx(1.0));
  CHECK(vacuous.metrics.recall == doctest::Approx(0.0));
  CHECK(vacuous.metrics.f_half == doctest::Approx(0.0));
}

TEST_CASE("score_gec five-pair fixture matches the exhaustive matcher") {
  const std::vector<Sentence> src = {tokenize("a b c d"), tokenize("a b c"),
                                     tokenize("m n o p"), tokenize("u v"),
                                     tokenize("k l m")};
  const std::vector<Sentence> hyp = {tokenize("a x c d"), tokenize("a b c"),
                                     tokenize("m n q o p"), tokenize("w v"),
                                     tokenize("k l")};
  const std::vector<Sentence> ref = {tokenize("a x c d"), tokenize("a z c"),
                                     tokenize("m q o p"), tokenize("w v"),
                                     tokenize("k l m")};

  const GecReport report = score_gec(src, hyp, ref);

  // Exhaustive identity matching per pair.
  int64_t matches = 0;
  int64_t predicted = 0;
  int64_t gold = 0;
  for (size_t i = 0; i < src.size(); ++i) {
    auto pred_edits = extract_edits(src[i], hyp[i]);
    auto gold_edits = extract_edits(src[i], ref[i]);
    predicted += static_cast<int64_t>(pred_edits.size());
    gold += static_cast<int64_t>(gold_edits.size());
    for (const Edit& e : pred_edits) {
      matches += std::count(gold_edits.begin(), gold_edits.end(), e) > 0 ? 1 : 0;
    }
  }
  CHECK(report.matches == matches);
  CHECK(report.predicted == predicted);
  CHECK(report.gold == gold);

  // Hand-computed expectations for this fixture.
  CHECK(report.matches == 2);
  CHECK(report.predicted == 4);
  CHECK(report.gold == 4);
  CHECK(report.metrics.precision == doctest::Approx(0.5));
  CHECK(report.metrics.recall == doctest::Approx(0.5));
  CHECK(report.metrics.f_half == doctest::Approx(0.5));
}

TEST_CASE("score_gec rejects mismatched list lengths") {
  const std::vector<Sentence> two = {tokenize("a"), tokenize("b")};
  const std::vector<Sentence> one = {tokenize("a")};
  CHECK_THROWS_AS(score_gec(two, two, one), ScoringError);
}

TEST_CASE("serialize_gecd_input layout") {
  const Sentence s = tokenize("Mi s-a făcut vrăji.");
  const TagSequence tags = tags_of({"O", "VERB:SVA", "O", "O", "O"});
  CHECK(serialize_gecd_input(s, tags) == "Mi s-a făcut vrăji . <SEP> O VERB:SVA O O O");
  CHECK(serialize_gecd_input(Sentence{}, {}) == "<SEP>");
  CHECK_THROWS_AS(serialize_gecd_input(s, tags_of({"O"})), UsageError);
}

TEST_CASE("gecd serialization round-trips") {
  Rng rng(55);
  const std::vector<std::string> words = {"lege", "raport", "aviz", ",", ".", "nr", "2020"};
  const std::vector<std::string> values = {"O", "SPELL", "PUNCT", "WO"};
  for (int round = 0; round < 50; ++round) {
    std::vector<std::string> texts;
    TagSequence tags;
    const size_t len = rng.below(10);
    for (size_t i = 0; i < len; ++i) {
      texts.push_back(words[rng.below(words.size())]);
      tags.push_back(Tag{values[rng.below(values.size())]});
    }
    const Sentence s = Sentence::from_token_texts(texts);
    const auto [tokens, parsed_tags] = parse_gecd_input(serialize_gecd_input(s, tags));
    CHECK(tokens == texts);
    CHECK(parsed_tags == tags);
  }
}

TEST_CASE("apply_edits rejects malformed spans") {
  const std::vector<std::string> src = {"a", "b", "c"};
  const std::vector<Edit> overlapping = {{0, 2, {"x"}}, {1, 3, {"y"}}};
  CHECK_THROWS_AS(apply_edits(src, overlapping), ValidationError);
}
