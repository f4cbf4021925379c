#include "gecforge/eval.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "gecforge/errors.hpp"

namespace gecforge {

double f_beta(double p, double r, double beta) {
  const double b2 = beta * beta;
  const double denom = b2 * p + r;
  if (denom <= 0.0) return 0.0;
  return (1.0 + b2) * p * r / denom;
}

Metrics metrics_from_counts(const TagCounts& c) {
  if (c.tp == 0 && c.fp == 0 && c.fn == 0) return {1.0, 1.0, 1.0};
  Metrics m;
  m.precision = (c.tp + c.fp) > 0 ? static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp)
                                  : 0.0;
  m.recall = (c.tp + c.fn) > 0 ? static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn)
                               : 0.0;
  m.f_half = f_beta(m.precision, m.recall, 0.5);
  return m;
}

GedReport score_ged(std::span<const TagSequence> pred, std::span<const TagSequence> gold) {
  if (pred.size() != gold.size()) {
    throw ScoringError("prediction count " + std::to_string(pred.size()) +
                       " does not match gold count " + std::to_string(gold.size()));
  }
  GedReport report;
  for (size_t s = 0; s < pred.size(); ++s) {
    if (pred[s].size() != gold[s].size()) {
      throw ScoringError("tag length mismatch at example " + std::to_string(s) + ": " +
                         std::to_string(pred[s].size()) + " vs " +
                         std::to_string(gold[s].size()));
    }
    for (size_t i = 0; i < pred[s].size(); ++i) {
      const Tag& p = pred[s][i];
      const Tag& g = gold[s][i];
      if (p.is_error()) {
        if (p == g) {
          report.per_tag[p.value].tp += 1;
        } else {
          report.per_tag[p.value].fp += 1;
          if (g.is_error()) report.per_tag[g.value].fn += 1;
        }
      } else if (g.is_error()) {
        report.per_tag[g.value].fn += 1;
      }
      // both O: no tally
    }
  }
  for (const auto& [tag, counts] : report.per_tag) {
    report.aggregate.tp += counts.tp;
    report.aggregate.fp += counts.fp;
    report.aggregate.fn += counts.fn;
    report.per_tag_metrics[tag] = metrics_from_counts(counts);
  }
  report.aggregate_metrics = metrics_from_counts(report.aggregate);
  return report;
}

std::vector<Edit> extract_edits(const Sentence& source, const Sentence& target) {
  const auto src = source.token_texts();
  const auto tgt = target.token_texts();
  const auto ops = align_tokens(src, tgt);

  std::vector<Edit> edits;
  size_t i = 0;
  size_t j = 0;
  std::optional<Edit> open;
  auto close = [&] {
    if (open) {
      edits.push_back(std::move(*open));
      open.reset();
    }
  };
  for (AlignOp op : ops) {
    switch (op) {
      case AlignOp::Equal:
        close();
        ++i;
        ++j;
        break;
      case AlignOp::Substitute:
        if (!open) open = Edit{i, i, {}};
        open->src_end = i + 1;
        open->replacement.push_back(tgt[j]);
        ++i;
        ++j;
        break;
      case AlignOp::Delete:
        if (!open) open = Edit{i, i, {}};
        open->src_end = i + 1;
        ++i;
        break;
      case AlignOp::Insert:
        if (!open) open = Edit{i, i, {}};
        open->replacement.push_back(tgt[j]);
        ++j;
        break;
    }
  }
  close();
  return edits;
}

std::vector<std::string> apply_edits(std::span<const std::string> source,
                                     std::span<const Edit> edits) {
  std::vector<std::string> out;
  size_t cursor = 0;
  for (const Edit& e : edits) {
    if (e.src_begin < cursor || e.src_end > source.size() || e.src_begin > e.src_end) {
      throw ValidationError("edit span [" + std::to_string(e.src_begin) + "," +
                            std::to_string(e.src_end) + ") is out of order or out of range");
    }
    for (; cursor < e.src_begin; ++cursor) out.push_back(source[cursor]);
    out.insert(out.end(), e.replacement.begin(), e.replacement.end());
    cursor = e.src_end;
  }
  for (; cursor < source.size(); ++cursor) out.push_back(source[cursor]);
  return out;
}

GecReport score_gec(std::span<const Sentence> sources, std::span<const Sentence> hypotheses,
                    std::span<const Sentence> references) {
  if (sources.size() != hypotheses.size() || sources.size() != references.size()) {
    throw ScoringError("score_gec requires equally many sources, hypotheses and references");
  }
  GecReport report;
  for (size_t s = 0; s < sources.size(); ++s) {
    const auto predicted = extract_edits(sources[s], hypotheses[s]);
    const auto gold = extract_edits(sources[s], references[s]);
    report.predicted += static_cast<int64_t>(predicted.size());
    report.gold += static_cast<int64_t>(gold.size());
    for (const Edit& e : predicted) {
      if (std::find(gold.begin(), gold.end(), e) != gold.end()) report.matches += 1;
    }
  }
  report.metrics.precision =
      report.predicted > 0
          ? static_cast<double>(report.matches) / static_cast<double>(report.predicted)
          : 1.0;
  report.metrics.recall =
      report.gold > 0 ? static_cast<double>(report.matches) / static_cast<double>(report.gold)
                      : 1.0;
  report.metrics.f_half = f_beta(report.metrics.precision, report.metrics.recall, 0.5);
  return report;
}

std::string serialize_gecd_input(const Sentence& erroneous, const TagSequence& tags) {
  if (erroneous.tokens.size() != tags.size()) {
    throw UsageError("serialize_gecd_input: " + std::to_string(tags.size()) + " tags for " +
                     std::to_string(erroneous.tokens.size()) + " tokens");
  }
  std::string out;
  for (const Token& t : erroneous.tokens) {
    out += t.text;
    out.push_back(' ');
  }
  out += "<SEP>";
  for (const Tag& t : tags) {
    out.push_back(' ');
    out += t.value;
  }
  return out;
}

std::pair<std::vector<std::string>, TagSequence> parse_gecd_input(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream in(line);
  std::string field;
  while (in >> field) fields.push_back(field);
  const auto sep = std::find(fields.begin(), fields.end(), "<SEP>");
  if (sep == fields.end()) throw ParseError("missing <SEP> marker", line);
  std::vector<std::string> tokens(fields.begin(), sep);
  TagSequence tags;
  for (auto it = sep + 1; it != fields.end(); ++it) {
    if (*it != "O" && !is_error_code(*it)) throw ParseError("unknown tag '" + *it + "'", line);
    tags.push_back(Tag{*it});
  }
  if (tokens.size() != tags.size()) {
    throw ParseError("token/tag count mismatch: " + std::to_string(tokens.size()) + " vs " +
                     std::to_string(tags.size()), line);
  }
  return {std::move(tokens), std::move(tags)};
}

}  // namespace gecforge
