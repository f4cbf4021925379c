#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gecforge/rng.hpp"
#include "gecforge/text.hpp"

namespace gecforge {

// Operation probabilities for one corruption pass; sums to 1.
struct OpDistribution {
  double substitution = 0.0;
  double deletion = 0.0;
  double insertion = 0.0;
  double keep = 1.0;

  void validate() const;

  friend bool operator==(const OpDistribution&, const OpDistribution&) = default;
};

// {0.1875, 0.05, 0.0625, 0.7}
OpDistribution default_mu();

// Solves substitution + insertion + deletion = 1 - keep under
// insertion/deletion = ins_over_del and substitution/insertion = sub_over_ins.
OpDistribution derive_mu(double keep, double ins_over_del, double sub_over_ins);

enum class WordOp { Keep, Delete, Insert, Substitute };

WordOp sample_word_op(Rng& rng, const OpDistribution& mu);

// Controlled character rewrites: keyboard adjacency, diacritic <-> base
// letter swaps, and common letter-sequence misspellings.
struct CharMaps {
  std::map<std::string, std::string> keyboard_proximity;      // code point -> neighbor letters
  std::vector<std::pair<std::string, std::string>> diacritic_pairs;
  std::map<std::string, std::string> common_misspellings;     // sequence -> sequence

  static CharMaps defaults();
  void validate() const;
};

// One char-level corruption pass over the word. May return the input
// unchanged when every draw lands on keep; callers resample.
std::string misspell_word(const std::string& word, const OpDistribution& char_mu,
                          const CharMaps& maps, Rng& rng);

// Deterministic single-character rewrites, exposed for direct testing.
std::string swap_adjacent_chars(const std::string& word, size_t cp_index);
std::optional<std::string> controlled_char_change(const std::string& word, size_t cp_index,
                                                  const CharMaps& maps, Rng& rng);

// Word-level corruption per sentence: substitutions become neighbor swaps
// (WO) or misspellings (SPELL), insertions add a stray vocabulary word
// (SPELL) or bind two words (ORTH), deletions drop the word untagged.
struct NoiseEngine {
  OpDistribution word_mu = default_mu();
  OpDistribution char_mu = default_mu();
  CharMaps maps = CharMaps::defaults();
  std::vector<std::string> vocabulary;  // insertion pool; sentence words when empty

  std::pair<Sentence, TagSequence> corrupt(const Sentence& sentence, Rng& rng) const;
};

std::pair<Sentence, TagSequence> corrupt_sentence_noise(const Sentence& sentence,
                                                        const OpDistribution& mu,
                                                        const OpDistribution& char_mu,
                                                        const CharMaps& maps, Rng& rng,
                                                        std::span<const std::string> vocabulary = {});

}  // namespace gecforge
