#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "gecforge/text.hpp"

namespace gecforge {

struct TagCounts {
  int64_t tp = 0;
  int64_t fp = 0;
  int64_t fn = 0;

  friend bool operator==(const TagCounts&, const TagCounts&) = default;
};

struct Metrics {
  double precision = 0.0;
  double recall = 0.0;
  double f_half = 0.0;
};

// (1+b^2) p r / (b^2 p + r), 0 when the denominator vanishes.
double f_beta(double p, double r, double beta);

// tp+fp+fn == 0 scores as perfect (nothing to find, nothing predicted);
// otherwise zero denominators give 0.
Metrics metrics_from_counts(const TagCounts& counts);

// Token-level confusion tallies per error tag. A predicted tag matching
// gold is a TP; a predicted tag disagreeing with gold is an FP for the
// predicted tag (and an FN for a non-O gold tag); a missed gold tag is an FN.
struct GedReport {
  std::map<std::string, TagCounts> per_tag;
  TagCounts aggregate;
  std::map<std::string, Metrics> per_tag_metrics;
  Metrics aggregate_metrics;
};

GedReport score_ged(std::span<const TagSequence> pred, std::span<const TagSequence> gold);

// A source token span replaced by a (possibly empty) token sequence.
struct Edit {
  size_t src_begin = 0;
  size_t src_end = 0;
  std::vector<std::string> replacement;

  friend bool operator==(const Edit&, const Edit&) = default;
  friend auto operator<=>(const Edit&, const Edit&) = default;
};

// Minimum-edit alignment with maximal runs of adjacent non-equal operations
// merged into single span edits.
std::vector<Edit> extract_edits(const Sentence& source, const Sentence& target);

// Applies sorted, non-overlapping edits to the source tokens.
std::vector<std::string> apply_edits(std::span<const std::string> source,
                                     std::span<const Edit> edits);

struct GecReport {
  int64_t matches = 0;
  int64_t predicted = 0;
  int64_t gold = 0;
  Metrics metrics;
};

// Corpus-level edit matching: predicted edits (source vs hypothesis) against
// gold edits (source vs reference); an edit matches when span and
// replacement are identical. Empty edit sets score as vacuously correct.
GecReport score_gec(std::span<const Sentence> sources, std::span<const Sentence> hypotheses,
                    std::span<const Sentence> references);

// "tok tok ... <SEP> tag tag ...": the tag-augmented correction input line.
std::string serialize_gecd_input(const Sentence& erroneous, const TagSequence& tags);

// Inverse of serialize_gecd_input.
std::pair<std::vector<std::string>, TagSequence> parse_gecd_input(const std::string& line);

}  // namespace gecforge
