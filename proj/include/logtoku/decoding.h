#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <span>
#include <string_view>
#include <vector>

namespace logtoku {

// Sampling temperature shrinks as epistemic uncertainty grows:
//   T(eu) = clamp(t_base * exp(-lambda * eu), t_min, t_base)
struct TemperaturePolicy {
  double t_base = 1.0;
  double t_min = 0.1;
  double lambda = 2.0;
};

void validate(const TemperaturePolicy& policy);

double effective_temperature(double eu, const TemperaturePolicy& policy);

// Seeded softmax sampler. Owns its generator; one per decoding session.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  // Index into logits drawn from softmax(logits / temperature).
  std::size_t sample(std::span<const double> logits, double temperature);

 private:
  double uniform();

  std::mt19937_64 rng_;
};

enum class Indicator { kGreedyNever, kTop2Always, kMaxProb, kEntropy, kLogTokUEu };

std::string_view indicator_name(Indicator kind);
// Accepts the names produced by indicator_name; throws Error(kPrecondition).
Indicator parse_indicator(std::string_view name);

struct ExpandDecision {
  Indicator indicator = Indicator::kGreedyNever;
  double threshold = 0.0;
  bool expanded = false;
};

// MaxProb expands when p > threshold, Entropy when H > threshold, LogTokU_EU
// when eu < threshold.
bool decide_expand(double indicator_value, Indicator kind, double threshold);
ExpandDecision make_decision(double indicator_value, Indicator kind, double threshold);

using ClassId = std::int64_t;

struct MultiLabelOutcome {
  std::vector<ClassId> chosen_classes;
  std::set<ClassId> gold_classes;
  int score_delta = 0;
};

// #correct - #incorrect among chosen. Throws Error(kInvalidDecision) on an
// empty or duplicated choice.
int score_multilabel(std::span<const ClassId> chosen, const std::set<ClassId>& gold);
MultiLabelOutcome score_outcome(std::vector<ClassId> chosen, std::set<ClassId> gold);

}  // namespace logtoku
