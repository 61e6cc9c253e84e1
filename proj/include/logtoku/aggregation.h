#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "logtoku/evidence.h"
#include "logtoku/records.h"

namespace logtoku {

inline constexpr int kDefaultTokenK = 25;

struct WordGroup {
  std::string word_text;
  std::vector<std::size_t> token_indices;  // contiguous, ascending
  double au = 0.0;  // max over member tokens
  double eu = 0.0;  // max over member tokens
  double unreliability = 0.0;  // au * eu
};

using QuadrantCensus = std::array<std::size_t, 5>;  // indexed by Quadrant

struct ResponseAssessment {
  std::vector<TokenUncertainty> tokens;
  std::vector<WordGroup> words;
  double response_reliability = 0.0;
  int k_tokens = kDefaultTokenK;
  QuadrantThresholds thresholds;
  QuadrantCensus quadrant_census{};
};

// Mean of the min(k_tokens, n) smallest token reliabilities.
double response_reliability(std::span<const TokenUncertainty> tokens, int k_tokens);
double response_reliability(std::span<const double> reliabilities, int k_tokens);

// grouping lists the token indices of each word, in order.
std::vector<WordGroup> word_uncertainty(std::span<const TokenUncertainty> tokens,
                                        const std::vector<std::vector<std::size_t>>& grouping,
                                        std::span<const std::string> token_texts = {});

// Consecutive records sharing word_group form one word; records without a
// group are single-token words. A group id that reappears after a different
// one is a malformed grouping.
std::vector<std::vector<std::size_t>> grouping_from_records(std::span<const LogitsRecord> records);

// Zeroes values <= mean, min-max scales the survivors into [0, 1]. A sole
// survivor maps to 1.
std::vector<double> display_normalize(std::span<const double> values);

struct AssessOptions {
  int k_evidence = kDefaultEvidenceK;
  int k_tokens = kDefaultTokenK;
  double clamp_floor = kDefaultClampFloor;
  ThresholdMode quadrant_mode = ThresholdMode::kResponseMean;
  double au_threshold = 0.0;  // used in kAbsolute mode
  double eu_threshold = 0.0;
};

ResponseAssessment assess_response(std::span<const LogitsRecord> records,
                                   const AssessOptions& options = {});

}  // namespace logtoku
