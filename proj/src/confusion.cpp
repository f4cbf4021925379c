#include "gecforge/confusion.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "gecforge/errors.hpp"

namespace gecforge {

namespace {

// Lookup priority when a word belongs to several closed classes.
const std::vector<std::string> kListPriority = {"PREP", "CONJ", "PRON", "DET"};

bool starts_uppercase(const std::string& text) {
  if (text.empty()) return false;
  const auto cps = utf8_codepoints(text);
  return !cps.empty() && cps[0] != utf8_lower(cps[0]);
}

std::string match_case(const std::string& replacement, bool capitalize) {
  if (!capitalize) return replacement;
  const auto cps = utf8_codepoints(replacement);
  if (cps.empty()) return replacement;
  std::string head = cps[0];
  if (head.size() == 1 && head[0] >= 'a' && head[0] <= 'z') {
    head[0] = static_cast<char>(head[0] - 'a' + 'A');
  } else if (head == "ă") {
    head = "Ă";
  } else if (head == "â") {
    head = "Â";
  } else if (head == "î") {
    head = "Î";
  } else if (head == "ș") {
    head = "Ș";
  } else if (head == "ț") {
    head = "Ț";
  }
  std::string out = head;
  for (size_t i = 1; i < cps.size(); ++i) out += cps[i];
  return out;
}

bool is_multiword(const std::string& entry) { return entry.find(' ') != std::string::npos; }

}  // namespace

ConfusionLists ConfusionLists::defaults() {
  ConfusionLists lists;
  lists.lists["PREP"] = {
      "la",        "în",          "către",      "contrar",    "fără",      "după",
      "cu",        "lângă",       "asupra",     "de",         "de la",     "despre",
      "dimprejurul", "din",       "dinaintea",  "înspre",     "între",     "înăuntrul",
      "împotriva", "împrejurul",  "înaintea",   "înapoia",    "întru",     "dedesubtul",
      "datorită",  "printre",     "prin",       "primprejur", "peste",     "pentru",
      "pe",        "până",        "via",        "spre",       "sub",
  };
  lists.lists["CONJ"] = {
      "și",    "sau",      "dar",   "iar",      "însă",  "ci",     "ori",
      "deci",  "căci",     "fiindcă", "deoarece", "întrucât", "dacă", "deși",
      "încât", "așadar",   "totuși",  "precum", "nici",  "să",
  };
  lists.lists["PRON"] = {
      "eu",     "tu",      "el",     "ea",      "noi",    "voi",     "ei",
      "ele",    "mine",    "tine",   "sine",    "care",   "cine",    "acesta",
      "aceasta", "aceștia", "acela",  "aceea",   "însuși", "însăși",  "însuți",
      "unul",   "altul",   "cineva", "ceva",    "nimeni", "nimic",   "oricine",
      "dânsul", "dumnealui",
  };
  lists.lists["DET"] = {
      "un",    "o",     "niște",  "acest",   "această", "acel",    "acea",
      "cel",   "cea",   "cei",    "cele",    "celui",   "celei",   "celor",
      "fiecare", "vreun", "vreo",  "mult",    "multă",   "mulți",   "multe",
      "tot",   "toată", "toți",   "toate",   "același", "aceeași", "orice",
  };
  return lists;
}

void ConfusionLists::validate() const {
  static const std::set<std::string> known = {"CONJ", "DET", "PREP", "PRON"};
  for (const auto& [code, words] : lists) {
    if (!known.count(code)) {
      throw ConfigError("confusion list for unknown error type '" + code + "'");
    }
    if (words.empty()) throw ConfigError("confusion list " + code + " is empty");
    std::set<std::string> seen;
    for (const std::string& w : words) {
      if (w.empty()) throw ConfigError("confusion list " + code + " contains an empty entry");
      if (!seen.insert(w).second) {
        throw ConfigError("confusion list " + code + " contains duplicate '" + w + "'");
      }
    }
  }
}

std::optional<std::string> ConfusionLists::owning_list(const std::string& lowercase_word) const {
  for (const std::string& code : kListPriority) {
    auto it = lists.find(code);
    if (it == lists.end()) continue;
    if (std::find(it->second.begin(), it->second.end(), lowercase_word) != it->second.end()) {
      return code;
    }
  }
  return std::nullopt;
}

PunctMatrix PunctMatrix::defaults() {
  PunctMatrix m;
  m.symbols = {".", ",", ";", ":", "?", "!"};
  m.rows = {
      //  .     ,     ;     :     ?     !
      {0.90, 0.04, 0.02, 0.02, 0.01, 0.01},  // .
      {0.05, 0.85, 0.06, 0.04, 0.00, 0.00},  // ,
      {0.00, 0.25, 0.75, 0.00, 0.00, 0.00},  // ;  (the quoted 25% -> ",")
      {0.02, 0.05, 0.08, 0.85, 0.00, 0.00},  // :
      {0.05, 0.00, 0.00, 0.00, 0.90, 0.05},  // ?
      {0.05, 0.00, 0.00, 0.00, 0.05, 0.90},  // !
  };
  return m;
}

void PunctMatrix::validate() const {
  if (rows.size() != symbols.size()) {
    throw ConfigError("punctuation matrix has " + std::to_string(rows.size()) +
                      " rows for " + std::to_string(symbols.size()) + " symbols");
  }
  std::set<std::string> seen;
  for (const std::string& s : symbols) {
    if (!seen.insert(s).second) throw ConfigError("duplicate punctuation symbol '" + s + "'");
  }
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != symbols.size()) {
      throw ConfigError("punctuation row for '" + symbols[i] + "' has wrong width");
    }
    double sum = 0.0;
    for (double v : rows[i]) {
      if (v < 0.0) throw ConfigError("negative probability in row '" + symbols[i] + "'");
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw ConfigError("punctuation row for '" + symbols[i] + "' sums to " +
                        std::to_string(sum) + ", expected 1");
    }
  }
}

std::optional<size_t> PunctMatrix::index_of(const std::string& symbol) const {
  for (size_t i = 0; i < symbols.size(); ++i) {
    if (symbols[i] == symbol) return i;
  }
  return std::nullopt;
}

std::pair<Sentence, TagSequence> corrupt_function_words(const Sentence& sentence,
                                                        const ConfusionLists& lists, double p,
                                                        Rng& rng) {
  if (p < 0.0 || p > 1.0) throw ConfigError("substitution probability must be in [0,1]");
  std::vector<std::string> out_texts;
  TagSequence tags;
  out_texts.reserve(sentence.tokens.size());
  tags.reserve(sentence.tokens.size());

  for (const Token& tok : sentence.tokens) {
    if (tok.kind != TokenKind::Word) {
      out_texts.push_back(tok.text);
      tags.push_back(Tag::correct());
      continue;
    }
    const std::string lower = utf8_lower(tok.text);
    const auto code = lists.owning_list(lower);
    if (!code || !rng.chance(p)) {
      out_texts.push_back(tok.text);
      tags.push_back(Tag::correct());
      continue;
    }
    // Identity excluded so every tag marks a real change; multi-word entries
    // are kept in the list but not drawn, preserving the token count.
    std::vector<std::string> candidates;
    for (const std::string& w : lists.lists.at(*code)) {
      if (w != lower && !is_multiword(w)) candidates.push_back(w);
    }
    if (candidates.empty()) {
      out_texts.push_back(tok.text);
      tags.push_back(Tag::correct());
      continue;
    }
    const std::string& pick = candidates[rng.below(candidates.size())];
    out_texts.push_back(match_case(pick, starts_uppercase(tok.text)));
    tags.push_back(Tag{*code});
  }
  return {Sentence::from_token_texts(out_texts), std::move(tags)};
}

std::pair<Sentence, TagSequence> corrupt_punctuation(const Sentence& sentence,
                                                     const PunctMatrix& matrix, Rng& rng) {
  matrix.validate();
  std::vector<std::string> out_texts;
  TagSequence tags;
  out_texts.reserve(sentence.tokens.size());
  tags.reserve(sentence.tokens.size());
  for (const Token& tok : sentence.tokens) {
    std::optional<size_t> row;
    if (tok.kind == TokenKind::Punct) row = matrix.index_of(tok.text);
    if (!row) {
      out_texts.push_back(tok.text);
      tags.push_back(Tag::correct());
      continue;
    }
    const size_t drawn = rng.categorical(matrix.rows[*row]);
    if (matrix.symbols[drawn] == tok.text) {
      out_texts.push_back(tok.text);
      tags.push_back(Tag::correct());
    } else {
      out_texts.push_back(matrix.symbols[drawn]);
      tags.push_back(Tag{"PUNCT"});
    }
  }
  return {Sentence::from_token_texts(out_texts), std::move(tags)};
}

}  // namespace gecforge
