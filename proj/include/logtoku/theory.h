#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <vector>

namespace logtoku::theory {

// Softmax cross-entropy split into the evidential classification term, the
// per-label evidence term and the evidence regularizer.
struct CeDecomposition {
  double cross_entropy = 0.0;
  double classification = 0.0;  // -log((z_y + 1) / sum_j (z_j + 1))
  double evidence = 0.0;         // -((z_y + 1) - log(z_y + 1))
  double regularizer = 0.0;      // -log(sum_j (z_j + 1) / sum_j e^(z_j + 1))
  double residual = 0.0;         // |CE - sum of the three|
};

// Requires every z_j > -1; throws Error(kDomain) otherwise.
CeDecomposition decompose_cross_entropy(std::span<const double> logits, std::size_t correct);
double ce_decomposition_residual(std::span<const double> logits, std::size_t correct);

struct GradientStepConfig {
  double learning_rate = 0.1;
  std::size_t correct_index = 0;
  std::set<std::size_t> top_set;
};

// Per-logit change of one gradient-descent step on -log softmax(z)[correct].
std::vector<double> gradient_step_deltas(std::span<const double> logits, std::size_t correct,
                                         double learning_rate);

// Change of sum_{i in top_set} z_i after one step. Throws
// Error(kPrecondition) unless correct_index is in top_set.
double gradient_step_evidence_delta(std::span<const double> logits, const GradientStepConfig& cfg);
// Same without the premise check.
double gradient_step_evidence_delta_unchecked(std::span<const double> logits,
                                              const GradientStepConfig& cfg);

// Descent directions (negative gradients) of L_a + L_b on the logits, split
// by which loss and which index they come from.
struct CompetitorGradients {
  std::vector<double> own;     // (1) each sample raising its own label
  std::vector<double> cross;   // (2) each sample lowering the other label
  std::vector<double> others;  // (3) both samples lowering every other class
  std::vector<double> direct;  // summed per-sample descent, computed separately
  double max_residual = 0.0;   // max |own + cross + others - direct|
  bool cross_nonpositive = false;
  // Per-sample descent on the other label: sample a on z_b, sample b on z_a.
  double descent_a_on_b = 0.0;
  double descent_b_on_b = 0.0;
};

// Throws Error(kInvalidLabels) when the two labels coincide or are out of range.
CompetitorGradients competitor_gradient_terms(std::span<const double> logits, std::size_t label_a,
                                              std::size_t label_b);

struct SharingReport {
  double total_probability = 0.0;
  double correct_share = 0.0;
  double max_single_correct = 0.0;
  bool total_is_one = false;     // within 1e-12
  bool share_below_one = false;  // strictly
};

SharingReport probability_sharing_check(std::span<const double> logits,
                                        const std::set<std::size_t>& correct);

struct CompetitionConfig {
  int occurrences_small = 3;
  int occurrences_large = 3000;
  int answers_per_question = 3;
  std::uint64_t seed = 7;
  double learning_rate = 0.1;
  int vocab_size = 10;
  // Non-answer logits start this far below the answers.
  double distractor_offset = 3.0;
};

struct CompetitionReport {
  double max_prob_small = 0.0;
  double max_prob_large = 0.0;
  double total_evidence_small = 0.0;  // sum of the top answers_per_question logits
  double total_evidence_large = 0.0;
  int occurrences_small = 0;
  int occurrences_large = 0;
  double eu_small = 0.0;
  double eu_large = 0.0;
  // Steps whose label was in the current top set yet lowered its evidence.
  std::size_t monotonicity_violations = 0;
  std::size_t checked_steps = 0;
};

// Trains free logits for two questions with cross-entropy, one step per
// occurrence. Each round of answers_per_question occurrences sees every
// answer once, in seeded shuffled order.
CompetitionReport competition_simulation(const CompetitionConfig& config);

}  // namespace logtoku::theory
