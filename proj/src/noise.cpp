#include "gecforge/noise.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "gecforge/errors.hpp"

namespace gecforge {

namespace {

const std::array<std::string, 31> kLetterPool = {
    "a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l", "m", "n", "o", "p",
    "r", "s", "t", "u", "v", "x", "z", "w", "y", "q", "ă", "â", "î", "ș", "ț"};

std::string random_letter(Rng& rng) { return kLetterPool[rng.below(kLetterPool.size())]; }

std::string random_letter_not(const std::string& current, Rng& rng) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::string pick = random_letter(rng);
    if (pick != current) return pick;
  }
  return current == "a" ? "e" : "a";
}

std::string join(std::span<const std::string> cps) {
  std::string out;
  for (const auto& c : cps) out += c;
  return out;
}

}  // namespace

void OpDistribution::validate() const {
  if (substitution < 0 || deletion < 0 || insertion < 0 || keep < 0) {
    throw ConfigError("operation distribution has a negative entry");
  }
  const double total = substitution + deletion + insertion + keep;
  if (std::abs(total - 1.0) > 1e-9) {
    throw ConfigError("operation distribution sums to " + std::to_string(total) +
                      ", expected 1");
  }
}

OpDistribution default_mu() { return {0.1875, 0.05, 0.0625, 0.7}; }

OpDistribution derive_mu(double keep, double ins_over_del, double sub_over_ins) {
  if (keep < 0.0 || keep >= 1.0) throw ConfigError("derive_mu: keep must be in [0,1)");
  if (ins_over_del <= 0.0 || sub_over_ins <= 0.0) {
    throw ConfigError("derive_mu: ratios must be positive");
  }
  // deletion * (1 + ins/del + (sub/ins)(ins/del)) = 1 - keep
  const double del = (1.0 - keep) / (1.0 + ins_over_del + sub_over_ins * ins_over_del);
  const double ins = ins_over_del * del;
  const double sub = sub_over_ins * ins;
  return {sub, del, ins, keep};
}

WordOp sample_word_op(Rng& rng, const OpDistribution& mu) {
  const double probs[4] = {mu.substitution, mu.deletion, mu.insertion, mu.keep};
  switch (rng.categorical(probs)) {
    case 0: return WordOp::Substitute;
    case 1: return WordOp::Delete;
    case 2: return WordOp::Insert;
    default: return WordOp::Keep;
  }
}

CharMaps CharMaps::defaults() {
  CharMaps maps;
  maps.keyboard_proximity = {
      {"q", "wa"},    {"w", "qes"},   {"e", "wrd"},  {"r", "etf"},  {"t", "rygț"},
      {"y", "tuh"},   {"u", "yij"},   {"i", "uokî"}, {"o", "ipl"},  {"p", "ol"},
      {"a", "qszăâ"}, {"s", "awdxș"}, {"d", "sefc"}, {"f", "dgrv"}, {"g", "fhtb"},
      {"h", "gjyn"},  {"j", "hkum"},  {"k", "jlim"}, {"l", "kop"},  {"z", "asx"},
      {"x", "zcsd"},  {"c", "xvdf"},  {"v", "cbfg"}, {"b", "vngh"}, {"n", "bmhj"},
      {"m", "njk"},   {"ă", "aâp"},   {"â", "aăq"},  {"î", "iu"},   {"ș", "sl"},
      {"ț", "t"},
  };
  maps.diacritic_pairs = {
      {"ă", "a"}, {"â", "a"}, {"î", "i"}, {"ș", "s"}, {"ț", "t"},
      {"Ă", "A"}, {"Â", "A"}, {"Î", "I"}, {"Ș", "S"}, {"Ț", "T"},
  };
  maps.common_misspellings = {
      {"x", "cs"}, {"cs", "x"},  {"ea", "ia"}, {"ia", "ea"}, {"oa", "ua"},
      {"mp", "np"}, {"mb", "nb"}, {"che", "ce"}, {"chi", "ci"}, {"ghe", "ge"},
  };
  return maps;
}

void CharMaps::validate() const {
  static const std::array<std::string, 10> required = {"ă", "â", "î", "ș", "ț",
                                                       "Ă", "Â", "Î", "Ș", "Ț"};
  for (const std::string& letter : required) {
    const bool covered = std::any_of(diacritic_pairs.begin(), diacritic_pairs.end(),
                                     [&](const auto& p) { return p.first == letter; });
    if (!covered) throw ConfigError("diacritic_pairs missing entry for '" + letter + "'");
  }
}

std::string swap_adjacent_chars(const std::string& word, size_t cp_index) {
  auto cps = utf8_codepoints(word);
  if (cp_index + 1 >= cps.size()) return word;
  std::swap(cps[cp_index], cps[cp_index + 1]);
  return join(cps);
}

namespace {

struct ControlledRewrite {
  std::string replacement;
  size_t consumed;  // code points replaced starting at the index
};

std::vector<ControlledRewrite> controlled_rewrites(std::span<const std::string> cps,
                                                   size_t index, const CharMaps& maps) {
  std::vector<ControlledRewrite> out;
  if (index >= cps.size()) return out;
  const std::string& current = cps[index];
  for (const auto& [diacritic, base] : maps.diacritic_pairs) {
    if (diacritic == current) out.push_back({base, 1});
    if (base == current) out.push_back({diacritic, 1});
  }
  if (auto it = maps.keyboard_proximity.find(current); it != maps.keyboard_proximity.end()) {
    for (const std::string& neighbor : utf8_codepoints(it->second)) {
      out.push_back({neighbor, 1});
    }
  }
  for (const auto& [from, to] : maps.common_misspellings) {
    const auto from_cps = utf8_codepoints(from);
    if (from_cps.empty() || index + from_cps.size() > cps.size()) continue;
    bool match = true;
    for (size_t k = 0; k < from_cps.size(); ++k) {
      if (cps[index + k] != from_cps[k]) {
        match = false;
        break;
      }
    }
    if (match) out.push_back({to, from_cps.size()});
  }
  return out;
}

}  // namespace

std::optional<std::string> controlled_char_change(const std::string& word, size_t cp_index,
                                                  const CharMaps& maps, Rng& rng) {
  const auto cps = utf8_codepoints(word);
  const auto candidates = controlled_rewrites(cps, cp_index, maps);
  if (candidates.empty()) return std::nullopt;
  const ControlledRewrite& pick = candidates[rng.below(candidates.size())];
  std::string out;
  for (size_t k = 0; k < cp_index; ++k) out += cps[k];
  out += pick.replacement;
  for (size_t k = cp_index + pick.consumed; k < cps.size(); ++k) out += cps[k];
  return out;
}

std::string misspell_word(const std::string& word, const OpDistribution& char_mu,
                          const CharMaps& maps, Rng& rng) {
  const auto cps = utf8_codepoints(word);
  std::vector<std::string> out;
  out.reserve(cps.size() + 1);
  size_t i = 0;
  while (i < cps.size()) {
    switch (sample_word_op(rng, char_mu)) {
      case WordOp::Keep:
        out.push_back(cps[i]);
        ++i;
        break;
      case WordOp::Delete:
        ++i;
        break;
      case WordOp::Insert:
        out.push_back(cps[i]);
        out.push_back(random_letter(rng));
        ++i;
        break;
      case WordOp::Substitute: {
        const uint64_t variant = rng.below(3);
        if (variant == 0 && i + 1 < cps.size()) {
          // Swap with the character to the right; both positions consumed.
          out.push_back(cps[i + 1]);
          out.push_back(cps[i]);
          i += 2;
        } else if (variant == 2) {
          const auto candidates = controlled_rewrites(cps, i, maps);
          if (!candidates.empty()) {
            const ControlledRewrite& pick = candidates[rng.below(candidates.size())];
            out.push_back(pick.replacement);
            i += pick.consumed;
          } else {
            out.push_back(random_letter_not(cps[i], rng));
            ++i;
          }
        } else {
          out.push_back(random_letter_not(cps[i], rng));
          ++i;
        }
        break;
      }
    }
  }
  return join(out);
}

namespace {

// Resamples the misspelling until it differs; after ten attempts falls back
// to an adjacent swap, then to a single-letter substitution.
std::string force_misspell(const std::string& word, const OpDistribution& char_mu,
                           const CharMaps& maps, Rng& rng) {
  for (int attempt = 0; attempt < 10; ++attempt) {
    std::string result = misspell_word(word, char_mu, maps, rng);
    if (!result.empty() && result != word) return result;
  }
  const auto cps = utf8_codepoints(word);
  for (size_t i = 0; i + 1 < cps.size(); ++i) {
    if (cps[i] != cps[i + 1]) return swap_adjacent_chars(word, i);
  }
  if (cps.empty()) return random_letter(rng);
  std::string out = random_letter_not(cps[0], rng);
  for (size_t i = 1; i < cps.size(); ++i) out += cps[i];
  return out;
}

std::optional<std::string> draw_insert_word(const Sentence& sentence,
                                            std::span<const std::string> vocabulary,
                                            size_t position, Rng& rng) {
  std::vector<std::string> fallback;
  std::span<const std::string> pool = vocabulary;
  if (pool.empty()) {
    for (const Token& t : sentence.tokens) {
      if (t.kind == TokenKind::Word) fallback.push_back(t.text);
    }
    pool = fallback;
  }
  if (pool.empty()) return std::nullopt;
  // Avoid duplicating nearby words, which would make the GED target
  // ambiguous under edit alignment.
  const size_t lo = position >= 2 ? position - 2 : 0;
  const size_t hi = std::min(sentence.tokens.size(), position + 4);
  auto near_duplicate = [&](const std::string& pick) {
    for (size_t k = lo; k < hi; ++k) {
      if (sentence.tokens[k].text == pick) return true;
    }
    return false;
  };
  for (int attempt = 0; attempt < 10; ++attempt) {
    const std::string& pick = pool[rng.below(pool.size())];
    if (!near_duplicate(pick)) return pick;
  }
  return std::nullopt;
}

}  // namespace

namespace {

std::pair<Sentence, TagSequence> corrupt_once(const Sentence& sentence,
                                              const OpDistribution& mu,
                                              const OpDistribution& char_mu,
                                              const CharMaps& maps, Rng& rng,
                                              std::span<const std::string> vocabulary) {
  const auto& tokens = sentence.tokens;
  std::vector<std::string> out_texts;
  TagSequence tags;
  auto emit = [&](const std::string& text, Tag tag) {
    out_texts.push_back(text);
    tags.push_back(std::move(tag));
  };

  size_t i = 0;
  while (i < tokens.size()) {
    const Token& tok = tokens[i];
    if (tok.kind != TokenKind::Word) {
      emit(tok.text, Tag::correct());
      ++i;
      continue;
    }
    switch (sample_word_op(rng, mu)) {
      case WordOp::Keep:
        emit(tok.text, Tag::correct());
        ++i;
        break;
      case WordOp::Delete:
        ++i;
        break;
      case WordOp::Insert: {
        const uint64_t variant = rng.below(2);
        const bool bind_ok = i + 1 < tokens.size() && tokens[i + 1].kind == TokenKind::Word;
        if (variant == 1 && bind_ok) {
          // Whitespace removal between two words; the neighbor is consumed.
          emit(tok.text + tokens[i + 1].text, Tag{"ORTH"});
          i += 2;
        } else {
          emit(tok.text, Tag::correct());
          if (auto word = draw_insert_word(sentence, vocabulary, i, rng)) {
            emit(*word, Tag{"SPELL"});
          }
          ++i;
        }
        break;
      }
      case WordOp::Substitute: {
        const uint64_t variant = rng.below(2);
        const bool swap_ok = i + 1 < tokens.size() && tokens[i + 1].kind == TokenKind::Word &&
                             tokens[i + 1].text != tok.text;
        if (variant == 0 && swap_ok) {
          emit(tokens[i + 1].text, Tag{"WO"});
          emit(tok.text, Tag{"WO"});
          i += 2;
        } else {
          emit(force_misspell(tok.text, char_mu, maps, rng), Tag{"SPELL"});
          ++i;
        }
        break;
      }
    }
  }
  return {Sentence::from_token_texts(out_texts), std::move(tags)};
}

}  // namespace

std::pair<Sentence, TagSequence> corrupt_sentence_noise(const Sentence& sentence,
                                                        const OpDistribution& mu,
                                                        const OpDistribution& char_mu,
                                                        const CharMaps& maps, Rng& rng,
                                                        std::span<const std::string> vocabulary) {
  mu.validate();
  char_mu.validate();
  const auto src_texts = sentence.token_texts();
  // Interacting operations on repeated words can produce tags the minimum
  // alignment cannot support (a swap beside a deleted duplicate looks like a
  // plain deletion). Resample those rare draws so every tag span marks a
  // visible change.
  auto result = corrupt_once(sentence, mu, char_mu, maps, rng, vocabulary);
  for (int attempt = 0; attempt < 10; ++attempt) {
    if (unsupported_tag_spans(src_texts, result.first.token_texts(), result.second).empty()) {
      return result;
    }
    Rng retry_rng(rng.next_u64());
    result = corrupt_once(sentence, mu, char_mu, maps, retry_rng, vocabulary);
  }
  if (unsupported_tag_spans(src_texts, result.first.token_texts(), result.second).empty()) {
    return result;
  }
  return {sentence, TagSequence(sentence.tokens.size(), Tag::correct())};
}

std::pair<Sentence, TagSequence> NoiseEngine::corrupt(const Sentence& sentence, Rng& rng) const {
  return corrupt_sentence_noise(sentence, word_mu, char_mu, maps, rng, vocabulary);
}

}  // namespace gecforge
