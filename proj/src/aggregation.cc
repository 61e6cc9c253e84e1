#include "logtoku/aggregation.h"

#include <algorithm>
#include <string>

#include "logtoku/error.h"

namespace logtoku {

double response_reliability(std::span<const double> reliabilities, int k_tokens) {
  if (reliabilities.empty()) throw Error(ErrorCode::kEmptyResponse, "response has no tokens");
  if (k_tokens < 1) throw Error(ErrorCode::kPrecondition, "k_tokens must be >= 1");
  std::vector<double> sorted(reliabilities.begin(), reliabilities.end());
  const std::size_t k = std::min<std::size_t>(k_tokens, sorted.size());
  std::partial_sort(sorted.begin(), sorted.begin() + k, sorted.end());
  double total = 0.0;
  for (std::size_t i = 0; i < k; ++i) total += sorted[i];
  return total / static_cast<double>(k);
}

double response_reliability(std::span<const TokenUncertainty> tokens, int k_tokens) {
  std::vector<double> r;
  r.reserve(tokens.size());
  for (const auto& t : tokens) r.push_back(t.reliability);
  return response_reliability(r, k_tokens);
}

std::vector<WordGroup> word_uncertainty(std::span<const TokenUncertainty> tokens,
                                        const std::vector<std::vector<std::size_t>>& grouping,
                                        std::span<const std::string> token_texts) {
  std::vector<WordGroup> words;
  words.reserve(grouping.size());
  std::size_t expected = 0;
  for (const auto& members : grouping) {
    if (members.empty()) throw Error(ErrorCode::kMalformedGrouping, "empty word group");
    WordGroup w;
    for (std::size_t idx : members) {
      if (idx >= tokens.size()) {
        throw Error(ErrorCode::kMalformedGrouping,
                    "token index " + std::to_string(idx) + " out of range");
      }
      if (idx != expected) {
        throw Error(ErrorCode::kMalformedGrouping,
                    "word groups must partition tokens in order; expected index " +
                        std::to_string(expected) + ", got " + std::to_string(idx));
      }
      ++expected;
      w.token_indices.push_back(idx);
      if (w.token_indices.size() == 1) {
        w.au = tokens[idx].au;
        w.eu = tokens[idx].eu;
      } else {
        w.au = std::max(w.au, tokens[idx].au);
        w.eu = std::max(w.eu, tokens[idx].eu);
      }
      if (idx < token_texts.size()) w.word_text += token_texts[idx];
    }
    w.unreliability = w.au * w.eu;
    words.push_back(std::move(w));
  }
  if (expected != tokens.size()) {
    throw Error(ErrorCode::kMalformedGrouping, "word groups leave tokens uncovered");
  }
  return words;
}

std::vector<std::vector<std::size_t>> grouping_from_records(std::span<const LogitsRecord> records) {
  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::int64_t> closed;
  std::optional<std::int64_t> open;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& g = records[i].word_group;
    if (g && open && *g == *open) {
      groups.back().push_back(i);
      continue;
    }
    if (open) closed.push_back(*open);
    if (g && std::find(closed.begin(), closed.end(), *g) != closed.end()) {
      throw Error(ErrorCode::kMalformedGrouping,
                  "word_group " + std::to_string(*g) + " is not contiguous (step " +
                      std::to_string(records[i].step) + ")");
    }
    open = g;
    groups.push_back({i});
  }
  return groups;
}

std::vector<double> display_normalize(std::span<const double> values) {
  std::vector<double> out(values.size(), 0.0);
  if (values.empty()) return out;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());

  double lo = 0.0, hi = 0.0;
  std::size_t survivors = 0;
  for (double v : values) {
    if (v <= mean) continue;
    if (survivors == 0) {
      lo = hi = v;
    } else {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    ++survivors;
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] <= mean) continue;
    out[i] = hi > lo ? (values[i] - lo) / (hi - lo) : 1.0;
  }
  return out;
}

ResponseAssessment assess_response(std::span<const LogitsRecord> records,
                                   const AssessOptions& options) {
  if (records.empty()) throw Error(ErrorCode::kEmptyResponse, "response has no tokens");
  ResponseAssessment out;
  out.k_tokens = options.k_tokens;
  out.tokens.reserve(records.size());
  std::vector<std::string> texts;
  texts.reserve(records.size());
  for (const auto& r : records) {
    out.tokens.push_back(assess(r, options.k_evidence, options.clamp_floor));
    texts.push_back(r.chosen_text);
  }
  if (options.quadrant_mode == ThresholdMode::kResponseMean) {
    out.thresholds = response_mean_thresholds(out.tokens);
  } else {
    out.thresholds = {options.au_threshold, options.eu_threshold, ThresholdMode::kAbsolute};
  }
  for (auto& t : out.tokens) {
    t.quadrant = classify_quadrant(t, out.thresholds);
    ++out.quadrant_census[static_cast<std::size_t>(t.quadrant)];
  }
  out.response_reliability = response_reliability(out.tokens, options.k_tokens);
  out.words = word_uncertainty(out.tokens, grouping_from_records(records), texts);
  return out;
}

}  // namespace logtoku
