#include "gecforge/taxonomy.hpp"

#include <algorithm>
#include <cmath>

#include "gecforge/errors.hpp"
#include "gecforge/rng.hpp"

namespace gecforge {

std::string_view to_string(GenMethod method) {
  switch (method) {
    case GenMethod::NoiseInjection: return "NoiseInjection";
    case GenMethod::ConfusionList: return "ConfusionList";
    case GenMethod::ZeroShotLLM: return "ZeroShotLLM";
    case GenMethod::TwoShotLLM: return "TwoShotLLM";
  }
  return "NoiseInjection";
}

GenMethod gen_method_from_string(std::string_view name) {
  if (name == "NoiseInjection") return GenMethod::NoiseInjection;
  if (name == "ConfusionList") return GenMethod::ConfusionList;
  if (name == "ZeroShotLLM") return GenMethod::ZeroShotLLM;
  if (name == "TwoShotLLM") return GenMethod::TwoShotLLM;
  throw ConfigError("unknown generation method: " + std::string(name));
}

const std::vector<ErrorType>& taxonomy() {
  static const std::vector<ErrorType> table = {
      {"ADJ", "inappropriate choice of adjective for the sentence context",
       GenMethod::TwoShotLLM, 0.0422},
      {"ADJ:FORM", "incorrect degree of an adjective", GenMethod::ZeroShotLLM, 0.0294},
      {"ADV", "erroneous adverb usage", GenMethod::TwoShotLLM, 0.0290},
      {"CONJ", "erroneous choice of conjunction", GenMethod::ConfusionList, 0.0286},
      {"DET", "erroneous choice of determiner", GenMethod::ConfusionList, 0.0169},
      {"MORPH", "misuse of words stemming from the same root", GenMethod::TwoShotLLM, 0.0501},
      {"NOUN", "inappropriate noun usage", GenMethod::TwoShotLLM, 0.0255},
      {"NOUN:INFL", "incorrect inflection form of plural noun", GenMethod::TwoShotLLM, 0.0134},
      {"NOUN:NUM", "incorrect number of a noun", GenMethod::TwoShotLLM, 0.0158},
      {"NOUN:POSS", "disagreement between noun and possessive article",
       GenMethod::ZeroShotLLM, 0.0039},
      {"ORTH", "incorrect use of whitespace that changes sentence meaning",
       GenMethod::NoiseInjection, 0.1052},
      {"PREP", "erroneous choice of preposition", GenMethod::ConfusionList, 0.0313},
      {"PRON", "erroneous choice of pronoun", GenMethod::ConfusionList, 0.0217},
      {"PUNCT", "inappropriate punctuation", GenMethod::ConfusionList, 0.1076},
      {"SPELL", "errors related to word spelling", GenMethod::NoiseInjection, 0.2555},
      {"VERB", "inappropriate choice of verb for the sentence context",
       GenMethod::TwoShotLLM, 0.0072},
      {"VERB:FORM", "erroneous choice of form in a verb", GenMethod::TwoShotLLM, 0.0057},
      {"VERB:SVA", "disagreement between subject and verb in a sentence",
       GenMethod::TwoShotLLM, 0.0021},
      {"VERB:TENSE", "difference in tense between verb and rest of phrase",
       GenMethod::TwoShotLLM, 0.0038},
      {"WO", "incorrect word order", GenMethod::NoiseInjection, 0.2051},
  };
  return table;
}

const ErrorType* find_error_type(std::string_view code) {
  for (const ErrorType& e : taxonomy()) {
    if (e.code == code) return &e;
  }
  return nullptr;
}

bool is_error_code(std::string_view code) { return find_error_type(code) != nullptr; }

std::map<std::string, double> default_shares() {
  std::map<std::string, double> shares;
  for (const ErrorType& e : taxonomy()) shares[e.code] = e.target_share;
  return shares;
}

ErrorPlan plan_errors(size_t n_sentences, const std::map<std::string, double>& shares,
                      uint64_t seed) {
  if (n_sentences == 0) throw ConfigError("plan_errors: n_sentences must be >= 1");
  double total = 0.0;
  for (const auto& [code, share] : shares) {
    if (!is_error_code(code)) throw ConfigError("plan_errors: unknown error code " + code);
    if (share < 0.0) throw ConfigError("plan_errors: negative share for " + code);
    total += share;
  }
  if (std::abs(total - 1.0) > 1e-6) {
    throw ConfigError("plan_errors: shares sum to " + std::to_string(total) + ", expected 1");
  }

  // Quotas: floor(n * share) each, leftover sentences assigned by largest
  // fractional remainder (ties by code, for determinism).
  struct Entry {
    std::string code;
    size_t count;
    double remainder;
  };
  std::vector<Entry> entries;
  size_t assigned = 0;
  for (const auto& [code, share] : shares) {
    const double exact = static_cast<double>(n_sentences) * share;
    const size_t base = static_cast<size_t>(exact);
    entries.push_back({code, base, exact - static_cast<double>(base)});
    assigned += base;
  }
  std::vector<size_t> order(entries.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (entries[a].remainder != entries[b].remainder)
      return entries[a].remainder > entries[b].remainder;
    return entries[a].code < entries[b].code;
  });
  for (size_t k = 0; assigned < n_sentences; ++k) {
    entries[order[k % order.size()]].count += 1;
    ++assigned;
  }

  ErrorPlan plan;
  plan.assignments.reserve(n_sentences);
  for (const Entry& e : entries) {
    plan.assignments.insert(plan.assignments.end(), e.count, e.code);
  }
  Rng rng(seed);
  rng.shuffle(plan.assignments);
  return plan;
}

}  // namespace gecforge
