#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gecforge/taxonomy.hpp"

namespace gecforge {

enum class TokenKind { Word, Punct, Numeral };

struct Token {
  std::string text;
  TokenKind kind = TokenKind::Word;
  size_t begin = 0;  // byte offsets into the owning sentence's raw text
  size_t end = 0;

  friend bool operator==(const Token&, const Token&) = default;
};

struct Sentence {
  std::string raw;
  std::vector<Token> tokens;

  std::vector<std::string> token_texts() const;
  bool same_tokens(const Sentence& other) const;

  // Rebuilds a sentence from token texts: classifies kinds, joins with
  // the detokenizer's spacing rules and records the resulting spans.
  static Sentence from_token_texts(std::span<const std::string> texts);

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

// Splits punctuation (including the period of abbreviations like "nr.") into
// separate tokens, keeps hyphenated clitic clusters ("s-a") whole and digit
// runs as single Numeral tokens. Empty or whitespace-only input gives an
// empty token list.
Sentence tokenize(std::string_view text);

// Single space between word/numeral tokens, no space before closing
// punctuation. Inverse of tokenize on whitespace-normalized text.
std::string detokenize(std::span<const Token> tokens);
std::string detokenize_texts(std::span<const std::string> texts);

TokenKind classify_token(std::string_view text);

// UTF-8 helpers shared by the corruption engines.
std::vector<std::string> utf8_codepoints(std::string_view text);
std::string utf8_lower(std::string_view text);

// Places `error` at each listed 0-based position, `O` elsewhere.
// Throws ValidationError naming the first out-of-range index.
TagSequence indices_to_tags(size_t token_count, std::span<const int64_t> indices,
                            const ErrorType& error);

// Minimum-edit token alignment between two sentences; every erroneous-side
// token that is substituted or inserted is tagged `error`, deletions leave
// no tag.
TagSequence diff_tags(const Sentence& correct, const Sentence& erroneous,
                      const ErrorType& error);

// Token-level alignment primitive used by diff_tags, edit extraction and
// corruption validation. Costs: equal 0, substitute/delete/insert 1; ties
// resolved preferring equal, then substitution, deletion, insertion, which
// places indel runs leftmost.
enum class AlignOp { Equal, Substitute, Delete, Insert };

std::vector<AlignOp> align_tokens(std::span<const std::string> source,
                                  std::span<const std::string> target);

// Target-side positions that are substituted or inserted under align_tokens.
std::vector<size_t> changed_target_positions(std::span<const std::string> source,
                                             std::span<const std::string> target);

// Runs of identical non-O tags that cover no changed or inserted target
// position, as [begin, end) pairs. Such spans mark text the minimum-edit
// alignment considers untouched.
std::vector<std::pair<size_t, size_t>> unsupported_tag_spans(
    std::span<const std::string> source, std::span<const std::string> target,
    const TagSequence& tags);

// The dataset atom: a correct sentence, its corrupted counterpart, the
// token-level tag sequence over the corrupted side, and provenance.
struct ParallelExample {
  std::string id;
  std::string source_corpus;
  Sentence correct;
  Sentence erroneous;
  TagSequence tags;
  std::vector<std::string> injected;
  uint64_t seed = 0;

  friend bool operator==(const ParallelExample&, const ParallelExample&) = default;
};

}  // namespace gecforge
