#include "logtoku/theory.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "logtoku/error.h"
#include "logtoku/evidence.h"

namespace logtoku::theory {

namespace {

double log_sum_exp(std::span<const double> v) {
  const double top = *std::max_element(v.begin(), v.end());
  double total = 0.0;
  for (double x : v) total += std::exp(x - top);
  return top + std::log(total);
}

void check_logits(std::span<const double> logits) {
  if (logits.empty()) throw Error(ErrorCode::kPrecondition, "logit vector is empty");
  for (double z : logits) {
    if (!std::isfinite(z)) throw Error(ErrorCode::kDomain, "non-finite logit");
  }
}

void check_index(std::size_t index, std::size_t size, const char* what) {
  if (index >= size) {
    throw Error(ErrorCode::kPrecondition, std::string(what) + " index " + std::to_string(index) +
                                              " outside vocabulary of " + std::to_string(size));
  }
}

}  // namespace

CeDecomposition decompose_cross_entropy(std::span<const double> logits, std::size_t correct) {
  check_logits(logits);
  check_index(correct, logits.size(), "correct");
  for (double z : logits) {
    if (!(z > -1.0)) {
      throw Error(ErrorCode::kDomain, "decomposition needs every logit > -1, got " + std::to_string(z));
    }
  }
  double shifted_total = 0.0;
  std::vector<double> shifted(logits.size());
  for (std::size_t j = 0; j < logits.size(); ++j) {
    shifted[j] = logits[j] + 1.0;
    shifted_total += shifted[j];
  }
  const double zy1 = shifted[correct];

  CeDecomposition d;
  d.cross_entropy = log_sum_exp(logits) - logits[correct];
  d.classification = -(std::log(zy1) - std::log(shifted_total));
  d.evidence = -(zy1 - std::log(zy1));
  d.regularizer = -(std::log(shifted_total) - log_sum_exp(shifted));
  d.residual = std::abs(d.cross_entropy - (d.classification + d.evidence + d.regularizer));
  return d;
}

double ce_decomposition_residual(std::span<const double> logits, std::size_t correct) {
  return decompose_cross_entropy(logits, correct).residual;
}

std::vector<double> gradient_step_deltas(std::span<const double> logits, std::size_t correct,
                                         double learning_rate) {
  check_logits(logits);
  check_index(correct, logits.size(), "correct");
  const auto p = softmax(logits);
  std::vector<double> delta(p.size());
  // 1 - p_correct is taken as the sum of the other probabilities so the
  // full-vocabulary change cancels to rounding.
  double others = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i == correct) continue;
    delta[i] = -learning_rate * p[i];
    others += p[i];
  }
  delta[correct] = learning_rate * others;
  return delta;
}

double gradient_step_evidence_delta_unchecked(std::span<const double> logits,
                                              const GradientStepConfig& cfg) {
  for (std::size_t i : cfg.top_set) check_index(i, logits.size(), "top-set");
  const auto delta = gradient_step_deltas(logits, cfg.correct_index, cfg.learning_rate);
  double change = 0.0;
  for (std::size_t i : cfg.top_set) change += delta[i];
  return change;
}

double gradient_step_evidence_delta(std::span<const double> logits, const GradientStepConfig& cfg) {
  if (!cfg.top_set.count(cfg.correct_index)) {
    throw Error(ErrorCode::kPrecondition, "the correct class must belong to the top set");
  }
  if (!(cfg.learning_rate > 0.0)) throw Error(ErrorCode::kPrecondition, "learning rate must be > 0");
  return gradient_step_evidence_delta_unchecked(logits, cfg);
}

CompetitorGradients competitor_gradient_terms(std::span<const double> logits, std::size_t label_a,
                                              std::size_t label_b) {
  check_logits(logits);
  if (label_a >= logits.size() || label_b >= logits.size()) {
    throw Error(ErrorCode::kInvalidLabels, "label outside the vocabulary");
  }
  if (label_a == label_b) throw Error(ErrorCode::kInvalidLabels, "the two labels must differ");
  const std::size_t n = logits.size();
  const auto p = softmax(logits);

  CompetitorGradients g;
  g.own.assign(n, 0.0);
  g.cross.assign(n, 0.0);
  g.others.assign(n, 0.0);
  g.own[label_a] = 1.0 - p[label_a];
  g.own[label_b] = 1.0 - p[label_b];
  g.cross[label_b] = -p[label_b];  // sample a pushes the other answer down
  g.cross[label_a] = -p[label_a];  // and sample b likewise
  for (std::size_t m = 0; m < n; ++m) {
    if (m != label_a && m != label_b) g.others[m] = -2.0 * p[m];
  }

  // Independent route: descent of each sample's loss, e_y - p, summed.
  g.direct.assign(n, 0.0);
  for (std::size_t label : {label_a, label_b}) {
    for (std::size_t m = 0; m < n; ++m) {
      g.direct[m] += (m == label ? 1.0 : 0.0) - p[m];
    }
  }
  for (std::size_t m = 0; m < n; ++m) {
    g.max_residual = std::max(g.max_residual, std::abs(g.own[m] + g.cross[m] + g.others[m] - g.direct[m]));
  }
  g.cross_nonpositive = g.cross[label_a] <= 0.0 && g.cross[label_b] <= 0.0;
  g.descent_a_on_b = -p[label_b];
  g.descent_b_on_b = 1.0 - p[label_b];
  return g;
}

SharingReport probability_sharing_check(std::span<const double> logits,
                                        const std::set<std::size_t>& correct) {
  check_logits(logits);
  if (correct.empty() || correct.size() >= logits.size()) {
    throw Error(ErrorCode::kPrecondition, "correct set must be non-empty and smaller than the vocabulary");
  }
  for (std::size_t i : correct) check_index(i, logits.size(), "correct");
  const auto p = softmax(logits);
  SharingReport r;
  for (std::size_t i = 0; i < p.size(); ++i) {
    r.total_probability += p[i];
    if (correct.count(i)) {
      r.correct_share += p[i];
      r.max_single_correct = std::max(r.max_single_correct, p[i]);
    }
  }
  r.total_is_one = std::abs(r.total_probability - 1.0) <= 1e-12;
  r.share_below_one = r.correct_share < 1.0;
  return r;
}

namespace {

std::size_t bounded(std::mt19937_64& rng, std::size_t n) {
  // Rejection sampling keeps the draw uniform and the sequence portable.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return static_cast<std::size_t>(x % n);
}

struct BranchResult {
  double max_prob = 0.0;
  double total_evidence = 0.0;
  double eu = 0.0;
  std::size_t violations = 0;
  std::size_t checked = 0;
};

BranchResult train_branch(int occurrences, const CompetitionConfig& cfg, std::mt19937_64& rng) {
  const std::size_t answers = cfg.answers_per_question;
  std::vector<double> z(cfg.vocab_size, -cfg.distractor_offset);
  std::fill(z.begin(), z.begin() + answers, 0.0);

  std::vector<std::size_t> labels;
  labels.reserve(occurrences);
  std::vector<std::size_t> round(answers);
  while (labels.size() < static_cast<std::size_t>(occurrences)) {
    std::iota(round.begin(), round.end(), 0);
    for (std::size_t i = answers - 1; i > 0; --i) std::swap(round[i], round[bounded(rng, i + 1)]);
    for (std::size_t a : round) {
      if (labels.size() < static_cast<std::size_t>(occurrences)) labels.push_back(a);
    }
  }

  auto top_indices = [&](const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::partial_sort(idx.begin(), idx.begin() + answers, idx.end(),
                      [&](std::size_t a, std::size_t b) { return v[a] > v[b] || (v[a] == v[b] && a < b); });
    idx.resize(answers);
    return idx;
  };

  BranchResult out;
  for (std::size_t label : labels) {
    const auto top = top_indices(z);
    const bool in_top = std::find(top.begin(), top.end(), label) != top.end();
    const auto delta = gradient_step_deltas(z, label, cfg.learning_rate);
    if (in_top) {
      double change = 0.0;
      for (std::size_t i : top) change += delta[i];
      ++out.checked;
      if (change < -1e-12) ++out.violations;
    }
    for (std::size_t i = 0; i < z.size(); ++i) z[i] += delta[i];
  }

  const auto p = softmax(z);
  out.max_prob = *std::max_element(p.begin(), p.end());
  std::vector<double> sorted = z;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  for (std::size_t i = 0; i < answers; ++i) out.total_evidence += sorted[i];
  out.eu = epistemic(build_evidence(sorted, static_cast<int>(answers)));
  return out;
}

}  // namespace

CompetitionReport competition_simulation(const CompetitionConfig& config) {
  if (config.occurrences_small < 1 || config.occurrences_large < 1) {
    throw Error(ErrorCode::kPrecondition, "occurrence counts must be positive");
  }
  if (config.answers_per_question < 2) {
    throw Error(ErrorCode::kPrecondition, "competition needs at least 2 answers per question");
  }
  if (config.vocab_size <= config.answers_per_question) {
    throw Error(ErrorCode::kPrecondition, "vocabulary must be larger than the answer set");
  }
  if (!(config.learning_rate > 0.0)) throw Error(ErrorCode::kPrecondition, "learning rate must be > 0");

  std::mt19937_64 rng(config.seed);
  const auto small = train_branch(config.occurrences_small, config, rng);
  const auto large = train_branch(config.occurrences_large, config, rng);

  CompetitionReport r;
  r.max_prob_small = small.max_prob;
  r.max_prob_large = large.max_prob;
  r.total_evidence_small = small.total_evidence;
  r.total_evidence_large = large.total_evidence;
  r.occurrences_small = config.occurrences_small;
  r.occurrences_large = config.occurrences_large;
  r.eu_small = small.eu;
  r.eu_large = large.eu;
  r.monotonicity_violations = small.violations + large.violations;
  r.checked_steps = small.checked + large.checked;
  return r;
}

}  // namespace logtoku::theory
