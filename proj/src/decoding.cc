#include "logtoku/decoding.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "logtoku/error.h"

namespace logtoku {

void validate(const TemperaturePolicy& policy) {
  if (!(policy.t_min > 0.0) || !(policy.t_base >= policy.t_min) || !std::isfinite(policy.t_base)) {
    throw Error(ErrorCode::kPrecondition, "temperature policy needs 0 < t_min <= t_base");
  }
  if (!(policy.lambda >= 0.0) || !std::isfinite(policy.lambda)) {
    throw Error(ErrorCode::kPrecondition, "temperature policy needs lambda >= 0");
  }
}

double effective_temperature(double eu, const TemperaturePolicy& policy) {
  validate(policy);
  const double t = policy.t_base * std::exp(-policy.lambda * eu);
  return std::clamp(t, policy.t_min, policy.t_base);
}

double Sampler::uniform() {
  // 53 random bits into [0, 1).
  return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

std::size_t Sampler::sample(std::span<const double> logits, double temperature) {
  if (logits.empty()) throw Error(ErrorCode::kPrecondition, "cannot sample from no logits");
  if (!(temperature > 0.0)) throw Error(ErrorCode::kPrecondition, "temperature must be > 0");
  const auto top = std::max_element(logits.begin(), logits.end());
  std::vector<double> weights(logits.size());
  double total = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    weights[i] = std::exp((logits[i] - *top) / temperature);
    total += weights[i];
  }
  const double u = uniform() * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (u < acc) return i;
  }
  return static_cast<std::size_t>(top - logits.begin());
}

std::string_view indicator_name(Indicator kind) {
  switch (kind) {
    case Indicator::kGreedyNever: return "GreedyNever";
    case Indicator::kTop2Always: return "Top2Always";
    case Indicator::kMaxProb: return "MaxProb";
    case Indicator::kEntropy: return "Entropy";
    case Indicator::kLogTokUEu: return "LogTokU_EU";
  }
  return "?";
}

Indicator parse_indicator(std::string_view name) {
  for (auto kind : {Indicator::kGreedyNever, Indicator::kTop2Always, Indicator::kMaxProb,
                    Indicator::kEntropy, Indicator::kLogTokUEu}) {
    if (indicator_name(kind) == name) return kind;
  }
  throw Error(ErrorCode::kPrecondition, "unknown indicator \"" + std::string(name) + "\"");
}

bool decide_expand(double indicator_value, Indicator kind, double threshold) {
  switch (kind) {
    case Indicator::kGreedyNever: return false;
    case Indicator::kTop2Always: return true;
    case Indicator::kMaxProb: return indicator_value > threshold;
    case Indicator::kEntropy: return indicator_value > threshold;
    case Indicator::kLogTokUEu: return indicator_value < threshold;
  }
  return false;
}

ExpandDecision make_decision(double indicator_value, Indicator kind, double threshold) {
  return {kind, threshold, decide_expand(indicator_value, kind, threshold)};
}

int score_multilabel(std::span<const ClassId> chosen, const std::set<ClassId>& gold) {
  if (chosen.empty()) throw Error(ErrorCode::kInvalidDecision, "no class chosen");
  std::set<ClassId> seen;
  int score = 0;
  for (ClassId c : chosen) {
    if (!seen.insert(c).second) {
      throw Error(ErrorCode::kInvalidDecision, "class " + std::to_string(c) + " chosen twice");
    }
    score += gold.count(c) ? 1 : -1;
  }
  return score;
}

MultiLabelOutcome score_outcome(std::vector<ClassId> chosen, std::set<ClassId> gold) {
  const int delta = score_multilabel(chosen, gold);
  return {std::move(chosen), std::move(gold), delta};
}

}  // namespace logtoku
