#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace gecforge {

enum class GenMethod { NoiseInjection, ConfusionList, ZeroShotLLM, TwoShotLLM };

std::string_view to_string(GenMethod method);
GenMethod gen_method_from_string(std::string_view name);

// One row of the 20-type Romanian error taxonomy.
struct ErrorType {
  std::string code;
  std::string description;
  GenMethod method = GenMethod::NoiseInjection;
  double target_share = 0.0;
};

// All 20 error types with their target shares and generation methods.
const std::vector<ErrorType>& taxonomy();

// nullptr when the code is unknown.
const ErrorType* find_error_type(std::string_view code);

bool is_error_code(std::string_view code);

// A token-level annotation: an error code, or "O" for a correct token.
struct Tag {
  std::string value = "O";

  Tag() = default;
  explicit Tag(std::string v) : value(std::move(v)) {}

  bool is_error() const { return value != "O"; }
  static Tag correct() { return Tag{}; }

  friend bool operator==(const Tag& a, const Tag& b) { return a.value == b.value; }
  friend auto operator<=>(const Tag& a, const Tag& b) { return a.value <=> b.value; }
};

using TagSequence = std::vector<Tag>;

// Per-sentence error assignment, one taxonomy code per planned sentence.
struct ErrorPlan {
  std::vector<std::string> assignments;

  size_t size() const { return assignments.size(); }
  const std::string& operator[](size_t i) const { return assignments[i]; }
};

// Target shares as a code -> fraction map (sums to 1).
std::map<std::string, double> default_shares();

// Largest-remainder quota per type followed by a seeded shuffle, so realized
// counts stay within one sentence of n * share even for small n.
ErrorPlan plan_errors(size_t n_sentences, const std::map<std::string, double>& shares,
                      uint64_t seed);

}  // namespace gecforge
