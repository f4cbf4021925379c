#include "gecforge/text.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <set>

#include "gecforge/errors.hpp"

namespace gecforge {

namespace {

// Decoded code point with its byte extent in the source string.
struct Cp {
  uint32_t value = 0;
  size_t begin = 0;
  size_t end = 0;
};

std::vector<Cp> decode_utf8(std::string_view text) {
  std::vector<Cp> out;
  size_t i = 0;
  const size_t n = text.size();
  while (i < n) {
    const unsigned char c = static_cast<unsigned char>(text[i]);
    uint32_t cp = 0;
    size_t len = 1;
    if (c < 0x80) {
      cp = c;
    } else if ((c >> 5) == 0x6 && i + 1 < n) {
      cp = (c & 0x1f) << 6 | (static_cast<unsigned char>(text[i + 1]) & 0x3f);
      len = 2;
    } else if ((c >> 4) == 0xe && i + 2 < n) {
      cp = (c & 0x0f) << 12 | (static_cast<unsigned char>(text[i + 1]) & 0x3f) << 6 |
           (static_cast<unsigned char>(text[i + 2]) & 0x3f);
      len = 3;
    } else if ((c >> 3) == 0x1e && i + 3 < n) {
      cp = (c & 0x07) << 18 | (static_cast<unsigned char>(text[i + 1]) & 0x3f) << 12 |
           (static_cast<unsigned char>(text[i + 2]) & 0x3f) << 6 |
           (static_cast<unsigned char>(text[i + 3]) & 0x3f);
      len = 4;
    } else {
      cp = 0xfffd;  // stray byte, treated as a standalone symbol
    }
    out.push_back({cp, i, i + len});
    i += len;
  }
  return out;
}

bool is_space_cp(uint32_t cp) {
  return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\f' || cp == '\v' ||
         cp == 0xa0 || cp == 0x2009 || cp == 0x200b;
}

bool is_digit_cp(uint32_t cp) { return cp >= '0' && cp <= '9'; }

// Unicode punctuation seen in legal text beyond the ASCII set.
bool is_unicode_punct(uint32_t cp) {
  switch (cp) {
    case 0x2010: case 0x2011: case 0x2012: case 0x2013: case 0x2014:  // dashes
    case 0x2018: case 0x2019: case 0x201a: case 0x201c: case 0x201d: case 0x201e:  // quotes
    case 0x00ab: case 0x00bb:  // guillemets
    case 0x2026:               // ellipsis
    case 0x00a7: case 0x00b0: case 0x2022: case 0x00b7:
    case 0x2032: case 0x2033:
      return true;
    default:
      return false;
  }
}

bool is_punct_cp(uint32_t cp) {
  if (cp < 0x80) {
    const char ch = static_cast<char>(cp);
    return std::strchr("!\"#$%&'()*+,-./:;<=>?@[\\]^_`{|}~", ch) != nullptr;
  }
  return is_unicode_punct(cp);
}

// Letters by exclusion: anything that is not whitespace, a digit or
// punctuation counts as a word character (covers all diacritics).
bool is_letter_cp(uint32_t cp) {
  return !is_space_cp(cp) && !is_digit_cp(cp) && !is_punct_cp(cp);
}

bool is_word_joiner(uint32_t cp) { return cp == '-' || cp == 0x2019 || cp == '\''; }

// Closing punctuation attaches to the previous token without a space.
bool closes_left(std::string_view text) {
  static const std::set<std::string, std::less<>> marks = {
      ".", ",", ";", ":", "?", "!", ")", "]", "}", "»", "”", "…", "%"};
  return marks.count(text) > 0;
}

// Opening punctuation attaches to the next token without a space.
bool opens_right(std::string_view text) {
  static const std::set<std::string, std::less<>> marks = {"(", "[", "{", "«", "„",
                                                           "“"};
  return marks.count(text) > 0;
}

}  // namespace

std::vector<std::string> utf8_codepoints(std::string_view text) {
  std::vector<std::string> out;
  for (const Cp& cp : decode_utf8(text)) {
    out.emplace_back(text.substr(cp.begin, cp.end - cp.begin));
  }
  return out;
}

std::string utf8_lower(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  const auto cps = decode_utf8(text);
  for (const Cp& cp : cps) {
    if (cp.value < 0x80) {
      char c = static_cast<char>(cp.value);
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
      out.push_back(c);
      continue;
    }
    uint32_t v = cp.value;
    switch (v) {
      case 0x102: v = 0x103; break;  // Ă -> ă
      case 0xc2: v = 0xe2; break;    // Â -> â
      case 0xce: v = 0xee; break;    // Î -> î
      case 0x218: v = 0x219; break;  // Ș -> ș
      case 0x21a: v = 0x21b; break;  // Ț -> ț
      case 0x15e: v = 0x15f; break;  // Ş -> ş (cedilla legacy forms)
      case 0x162: v = 0x163; break;  // Ţ -> ţ
      default:
        if (v >= 0xc0 && v <= 0xde && v != 0xd7) v += 0x20;  // Latin-1 uppercase range
        break;
    }
    // Re-encode the (possibly lowered) code point.
    if (v < 0x80) {
      out.push_back(static_cast<char>(v));
    } else if (v < 0x800) {
      out.push_back(static_cast<char>(0xc0 | (v >> 6)));
      out.push_back(static_cast<char>(0x80 | (v & 0x3f)));
    } else if (v < 0x10000) {
      out.push_back(static_cast<char>(0xe0 | (v >> 12)));
      out.push_back(static_cast<char>(0x80 | ((v >> 6) & 0x3f)));
      out.push_back(static_cast<char>(0x80 | (v & 0x3f)));
    } else {
      out.push_back(static_cast<char>(0xf0 | (v >> 18)));
      out.push_back(static_cast<char>(0x80 | ((v >> 12) & 0x3f)));
      out.push_back(static_cast<char>(0x80 | ((v >> 6) & 0x3f)));
      out.push_back(static_cast<char>(0x80 | (v & 0x3f)));
    }
  }
  return out;
}

TokenKind classify_token(std::string_view text) {
  bool any_digit = false;
  bool all_punct = true;
  bool numeralish = true;
  for (const Cp& cp : decode_utf8(text)) {
    if (!is_punct_cp(cp.value)) all_punct = false;
    if (is_digit_cp(cp.value)) {
      any_digit = true;
    } else if (cp.value != '.' && cp.value != ',') {
      numeralish = false;
    }
  }
  if (!text.empty() && all_punct) return TokenKind::Punct;
  if (any_digit && numeralish) return TokenKind::Numeral;
  return TokenKind::Word;
}

Sentence tokenize(std::string_view text) {
  Sentence out;
  out.raw.assign(text);
  const std::vector<Cp> cps = decode_utf8(text);
  const size_t n = cps.size();
  size_t i = 0;
  auto push = [&](size_t first, size_t last, TokenKind kind) {
    const size_t b = cps[first].begin;
    const size_t e = cps[last].end;
    out.tokens.push_back({std::string(text.substr(b, e - b)), kind, b, e});
  };
  while (i < n) {
    if (is_space_cp(cps[i].value)) {
      ++i;
      continue;
    }
    const size_t start = i;
    if (is_digit_cp(cps[i].value)) {
      ++i;
      while (i < n) {
        if (is_digit_cp(cps[i].value)) {
          ++i;
        } else if ((cps[i].value == '.' || cps[i].value == ',') && i + 1 < n &&
                   is_digit_cp(cps[i + 1].value)) {
          i += 2;  // separator embedded between digits
        } else {
          break;
        }
      }
      push(start, i - 1, TokenKind::Numeral);
    } else if (is_letter_cp(cps[i].value)) {
      ++i;
      while (i < n) {
        if (is_letter_cp(cps[i].value)) {
          ++i;
        } else if (is_word_joiner(cps[i].value) && i + 1 < n && is_letter_cp(cps[i + 1].value)) {
          i += 2;  // clitic hyphen or apostrophe inside a word
        } else {
          break;
        }
      }
      push(start, i - 1, TokenKind::Word);
    } else {
      push(i, i, TokenKind::Punct);
      ++i;
    }
  }
  return out;
}

std::string detokenize_texts(std::span<const std::string> texts) {
  std::string out;
  for (size_t i = 0; i < texts.size(); ++i) {
    if (i > 0 && !closes_left(texts[i]) && !opens_right(texts[i - 1])) out.push_back(' ');
    out += texts[i];
  }
  return out;
}

std::string detokenize(std::span<const Token> tokens) {
  std::vector<std::string> texts;
  texts.reserve(tokens.size());
  for (const Token& t : tokens) texts.push_back(t.text);
  return detokenize_texts(texts);
}

std::vector<std::string> Sentence::token_texts() const {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const Token& t : tokens) out.push_back(t.text);
  return out;
}

bool Sentence::same_tokens(const Sentence& other) const {
  if (tokens.size() != other.tokens.size()) return false;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].text != other.tokens[i].text) return false;
  }
  return true;
}

Sentence Sentence::from_token_texts(std::span<const std::string> texts) {
  Sentence out;
  for (size_t i = 0; i < texts.size(); ++i) {
    if (i > 0 && !closes_left(texts[i]) && !opens_right(texts[i - 1])) out.raw.push_back(' ');
    const size_t begin = out.raw.size();
    out.raw += texts[i];
    out.tokens.push_back({texts[i], classify_token(texts[i]), begin, out.raw.size()});
  }
  return out;
}

TagSequence indices_to_tags(size_t token_count, std::span<const int64_t> indices,
                            const ErrorType& error) {
  TagSequence tags(token_count, Tag::correct());
  for (int64_t idx : indices) {
    if (idx < 0 || static_cast<size_t>(idx) >= token_count) {
      throw ValidationError("index " + std::to_string(idx) + " out of range for " +
                            std::to_string(token_count) + " tokens");
    }
    tags[static_cast<size_t>(idx)] = Tag{error.code};
  }
  return tags;
}

std::vector<AlignOp> align_tokens(std::span<const std::string> source,
                                  std::span<const std::string> target) {
  const size_t n = source.size();
  const size_t m = target.size();
  std::vector<std::vector<int>> cost(n + 1, std::vector<int>(m + 1, 0));
  for (size_t i = 0; i <= n; ++i) cost[i][0] = static_cast<int>(i);
  for (size_t j = 0; j <= m; ++j) cost[0][j] = static_cast<int>(j);
  for (size_t i = 1; i <= n; ++i) {
    for (size_t j = 1; j <= m; ++j) {
      const bool eq = source[i - 1] == target[j - 1];
      int best = cost[i - 1][j - 1] + (eq ? 0 : 1);
      best = std::min(best, cost[i - 1][j] + 1);
      best = std::min(best, cost[i][j - 1] + 1);
      cost[i][j] = best;
    }
  }
  std::vector<AlignOp> rev;
  size_t i = n;
  size_t j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 && source[i - 1] == target[j - 1] && cost[i][j] == cost[i - 1][j - 1]) {
      rev.push_back(AlignOp::Equal);
      --i;
      --j;
    } else if (i > 0 && j > 0 && cost[i][j] == cost[i - 1][j - 1] + 1) {
      rev.push_back(AlignOp::Substitute);
      --i;
      --j;
    } else if (i > 0 && cost[i][j] == cost[i - 1][j] + 1) {
      rev.push_back(AlignOp::Delete);
      --i;
    } else {
      rev.push_back(AlignOp::Insert);
      --j;
    }
  }
  std::reverse(rev.begin(), rev.end());
  return rev;
}

std::vector<size_t> changed_target_positions(std::span<const std::string> source,
                                             std::span<const std::string> target) {
  std::vector<size_t> out;
  size_t j = 0;
  for (AlignOp op : align_tokens(source, target)) {
    switch (op) {
      case AlignOp::Equal: ++j; break;
      case AlignOp::Substitute:
      case AlignOp::Insert: out.push_back(j++); break;
      case AlignOp::Delete: break;
    }
  }
  return out;
}

std::vector<std::pair<size_t, size_t>> unsupported_tag_spans(
    std::span<const std::string> source, std::span<const std::string> target,
    const TagSequence& tags) {
  std::vector<std::pair<size_t, size_t>> out;
  const auto changed = changed_target_positions(source, target);
  const std::set<size_t> changed_set(changed.begin(), changed.end());
  size_t pos = 0;
  while (pos < tags.size()) {
    if (!tags[pos].is_error()) {
      ++pos;
      continue;
    }
    size_t end = pos;
    bool touches_change = false;
    while (end < tags.size() && tags[end] == tags[pos]) {
      touches_change = touches_change || changed_set.count(end) > 0;
      ++end;
    }
    if (!touches_change) out.emplace_back(pos, end);
    pos = end;
  }
  return out;
}

TagSequence diff_tags(const Sentence& correct, const Sentence& erroneous,
                      const ErrorType& error) {
  const auto src = correct.token_texts();
  const auto tgt = erroneous.token_texts();
  TagSequence tags(tgt.size(), Tag::correct());
  for (size_t pos : changed_target_positions(src, tgt)) tags[pos] = Tag{error.code};
  return tags;
}

}  // namespace gecforge
