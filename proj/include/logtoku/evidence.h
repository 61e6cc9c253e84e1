#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "logtoku/records.h"

namespace logtoku {

inline constexpr int kDefaultEvidenceK = 10;
inline constexpr double kDefaultClampFloor = 1e-6;

// Dirichlet parameters taken from the k largest logits of one step.
struct TokenEvidence {
  std::vector<double> alphas;  // non-increasing, all > 0
  double alpha0 = 0.0;
  int k = 0;
  int clamped_count = 0;  // logits raised to the clamp floor
};

enum class Quadrant { kI, kII, kIII, kIV, kUnclassified };

std::string_view quadrant_name(Quadrant q);

struct TokenUncertainty {
  double au = 0.0;  // nats, in [0, ln k]
  double eu = 0.0;  // in (0, 1)
  double reliability = 0.0;  // -au * eu
  Quadrant quadrant = Quadrant::kUnclassified;
};

enum class ThresholdMode { kResponseMean, kAbsolute };

struct QuadrantThresholds {
  double au_threshold = 0.0;
  double eu_threshold = 0.0;
  ThresholdMode mode = ThresholdMode::kAbsolute;
};

TokenEvidence build_evidence(const LogitsRecord& record, int k = kDefaultEvidenceK,
                             double clamp_floor = kDefaultClampFloor);
// Same rule over a descending logit span.
TokenEvidence build_evidence(std::span<const double> sorted_logits, int k,
                             double clamp_floor = kDefaultClampFloor);

// Expected entropy of Categorical(p), p ~ Dirichlet(alphas):
//   -sum_k (a_k / a_0) (psi(a_k + 1) - psi(a_0 + 1))
double aleatoric(const TokenEvidence& evidence);

// k / sum_k (a_k + 1)
double epistemic(const TokenEvidence& evidence);

inline double token_reliability(double au, double eu) { return -au * eu; }

// Quadrant is left unclassified.
TokenUncertainty assess(const TokenEvidence& evidence);
TokenUncertainty assess(const LogitsRecord& record, int k = kDefaultEvidenceK,
                        double clamp_floor = kDefaultClampFloor);

// Allocation-free AU/EU over a descending logit span; the throughput path.
TokenUncertainty assess_logits(std::span<const double> sorted_logits, int k,
                               double clamp_floor = kDefaultClampFloor);

// Ties fall on the low side of each axis.
Quadrant classify_quadrant(const TokenUncertainty& u, const QuadrantThresholds& t);

// Mean AU and mean EU of the given tokens, mode kResponseMean.
QuadrantThresholds response_mean_thresholds(std::span<const TokenUncertainty> tokens);

struct MaxProbScore {
  double log_prob = 0.0;
  bool chosen_absent = false;  // scored as the lowest stored entry
};

// log of the chosen token's probability under softmax over the first k
// stored logits.
MaxProbScore baseline_maxprob(const LogitsRecord& record, int k = kDefaultEvidenceK);

// Shannon entropy (nats) of softmax over the first k stored logits.
double baseline_entropy(const LogitsRecord& record, int k = kDefaultEvidenceK);
double baseline_entropy(std::span<const double> logits);

// 1 / H with H clamped at 1e-12.
double entropy_reliability(double entropy);

// softmax over a logit span; max-shifted.
std::vector<double> softmax(std::span<const double> logits, double temperature = 1.0);

}  // namespace logtoku
