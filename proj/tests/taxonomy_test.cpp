#include <doctest.h>

#include <cmath>
#include <map>

#include "gecforge/errors.hpp"
#include "gecforge/taxonomy.hpp"

using namespace gecforge;

TEST_CASE("taxonomy lists the 20 error types with their shares and methods") {
  const auto& types = taxonomy();
  REQUIRE(types.size() == 20);

  const std::map<std::string, std::pair<GenMethod, double>> expected = {
      {"ADJ", {GenMethod::TwoShotLLM, 0.0422}},
      {"ADJ:FORM", {GenMethod::ZeroShotLLM, 0.0294}},
      {"ADV", {GenMethod::TwoShotLLM, 0.0290}},
      {"CONJ", {GenMethod::ConfusionList, 0.0286}},
      {"DET", {GenMethod::ConfusionList, 0.0169}},
      {"MORPH", {GenMethod::TwoShotLLM, 0.0501}},
      {"NOUN", {GenMethod::TwoShotLLM, 0.0255}},
      {"NOUN:INFL", {GenMethod::TwoShotLLM, 0.0134}},
      {"NOUN:NUM", {GenMethod::TwoShotLLM, 0.0158}},
      {"NOUN:POSS", {GenMethod::ZeroShotLLM, 0.0039}},
      {"ORTH", {GenMethod::NoiseInjection, 0.1052}},
      {"PREP", {GenMethod::ConfusionList, 0.0313}},
      {"PRON", {GenMethod::ConfusionList, 0.0217}},
      {"PUNCT", {GenMethod::ConfusionList, 0.1076}},
      {"SPELL", {GenMethod::NoiseInjection, 0.2555}},
      {"VERB", {GenMethod::TwoShotLLM, 0.0072}},
      {"VERB:FORM", {GenMethod::TwoShotLLM, 0.0057}},
      {"VERB:SVA", {GenMethod::TwoShotLLM, 0.0021}},
      {"VERB:TENSE", {GenMethod::TwoShotLLM, 0.0038}},
      {"WO", {GenMethod::NoiseInjection, 0.2051}},
  };
  REQUIRE(expected.size() == 20);
  double sum = 0.0;
  for (const ErrorType& e : types) {
    auto it = expected.find(e.code);
    REQUIRE_MESSAGE(it != expected.end(), e.code);
    CHECK(e.method == it->second.first);
    CHECK(e.target_share == doctest::Approx(it->second.second).epsilon(1e-12));
    sum += e.target_share;
  }
  CHECK(std::abs(sum - 1.0) <= 1e-6);
  CHECK(find_error_type("SPELL")->target_share == doctest::Approx(0.2555));
  CHECK(find_error_type("VERB:SVA")->method == GenMethod::TwoShotLLM);
  CHECK(find_error_type("NOPE") == nullptr);
}

TEST_CASE("plan_errors realizes quota counts close to the target shares") {
  const ErrorPlan plan = plan_errors(10000, default_shares(), 42);
  REQUIRE(plan.size() == 10000);
  std::map<std::string, size_t> counts;
  for (const std::string& code : plan.assignments) counts[code] += 1;

  const long long spell = static_cast<long long>(counts["SPELL"]);
  CHECK(std::llabs(spell - 2555) <= 150);

  for (const ErrorType& e : taxonomy()) {
    const double realized = static_cast<double>(counts[e.code]) / 10000.0;
    CHECK(std::abs(realized - e.target_share) <= 0.015);
  }
}

TEST_CASE("plan_errors degenerate distribution") {
  const ErrorPlan plan = plan_errors(1, {{"SPELL", 1.0}}, 999);
  CHECK(plan.assignments == std::vector<std::string>{"SPELL"});
}

TEST_CASE("plan_errors is deterministic in (n, shares, seed)") {
  const auto shares = default_shares();
  const ErrorPlan a = plan_errors(5, shares, 7);
  const ErrorPlan b = plan_errors(5, shares, 7);
  CHECK(a.assignments == b.assignments);
  const ErrorPlan c = plan_errors(5, shares, 8);
  CHECK(a.assignments.size() == c.assignments.size());
}

TEST_CASE("plan_errors validates its inputs") {
  CHECK_THROWS_AS(plan_errors(10, {{"SPELL", 0.9}}, 1), ConfigError);
  CHECK_THROWS_AS(plan_errors(0, {{"SPELL", 1.0}}, 1), ConfigError);
  CHECK_THROWS_AS(plan_errors(10, {{"BOGUS", 1.0}}, 1), ConfigError);
}

TEST_CASE("every plan assignment is a taxonomy member") {
  const ErrorPlan plan = plan_errors(500, default_shares(), 4);
  for (const std::string& code : plan.assignments) CHECK(is_error_code(code));
}
