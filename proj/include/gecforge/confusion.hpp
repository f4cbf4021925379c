#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gecforge/rng.hpp"
#include "gecforge/text.hpp"

namespace gecforge {

// Closed-class word inventories for CONJ, DET, PREP and PRON substitution.
struct ConfusionLists {
  std::map<std::string, std::vector<std::string>> lists;

  static ConfusionLists defaults();
  void validate() const;

  // Owning list for a lowercase token, resolved PREP > CONJ > PRON > DET
  // when a word belongs to several classes.
  std::optional<std::string> owning_list(const std::string& lowercase_word) const;
};

// Row-stochastic rewrite matrix over punctuation marks.
struct PunctMatrix {
  std::vector<std::string> symbols;
  std::vector<std::vector<double>> rows;

  static PunctMatrix defaults();
  void validate() const;
  std::optional<size_t> index_of(const std::string& symbol) const;
};

// Each function word is, with probability p, replaced by a different member
// of its list and tagged with that list's error code. Token count is
// preserved.
std::pair<Sentence, TagSequence> corrupt_function_words(const Sentence& sentence,
                                                        const ConfusionLists& lists, double p,
                                                        Rng& rng);

// Each punctuation token known to the matrix is redrawn from its row;
// changed marks are tagged PUNCT.
std::pair<Sentence, TagSequence> corrupt_punctuation(const Sentence& sentence,
                                                     const PunctMatrix& matrix, Rng& rng);

// Reads the lists and matrix from the toolkit configuration file, merging
// defaults for omitted sections.
std::pair<ConfusionLists, PunctMatrix> load_confusion_config(const std::string& path);

}  // namespace gecforge
