#include "logtoku/evidence.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "logtoku/digamma.h"
#include "logtoku/error.h"

namespace logtoku {

std::string_view quadrant_name(Quadrant q) {
  switch (q) {
    case Quadrant::kI: return "I";
    case Quadrant::kII: return "II";
    case Quadrant::kIII: return "III";
    case Quadrant::kIV: return "IV";
    case Quadrant::kUnclassified: return "-";
  }
  return "-";
}

namespace {

void check_width(int k, std::size_t stored) {
  if (k < 1) {
    throw Error(ErrorCode::kPrecondition, "evidence width must be >= 1");
  }
  if (static_cast<std::size_t>(k) > stored) {
    throw Error(ErrorCode::kInsufficientEvidence,
                "evidence width " + std::to_string(k) + " exceeds " + std::to_string(stored) +
                    " stored logits");
  }
}

void check_floor(double clamp_floor) {
  if (!(clamp_floor > 0.0) || !std::isfinite(clamp_floor)) {
    throw Error(ErrorCode::kPrecondition, "clamp floor must be finite and > 0");
  }
}

}  // namespace

TokenEvidence build_evidence(std::span<const double> sorted_logits, int k, double clamp_floor) {
  check_floor(clamp_floor);
  check_width(k, sorted_logits.size());
  TokenEvidence ev;
  ev.k = k;
  ev.alphas.reserve(k);
  for (int i = 0; i < k; ++i) {
    const double z = sorted_logits[i];
    if (!std::isfinite(z)) {
      throw Error(ErrorCode::kMalformedRecord, "non-finite logit at rank " + std::to_string(i));
    }
    if (z < clamp_floor) {
      ++ev.clamped_count;
      ev.alphas.push_back(clamp_floor);
    } else {
      ev.alphas.push_back(z);
    }
    ev.alpha0 += ev.alphas.back();
  }
  return ev;
}

TokenEvidence build_evidence(const LogitsRecord& record, int k, double clamp_floor) {
  check_width(k, record.topk.size());
  std::vector<double> logits(k);
  for (int i = 0; i < k; ++i) logits[i] = record.topk[i].logit;
  return build_evidence(logits, k, clamp_floor);
}

double aleatoric(const TokenEvidence& evidence) {
  const double psi0 = digamma_unchecked(evidence.alpha0 + 1.0);
  double au = 0.0;
  for (double a : evidence.alphas) {
    au -= (a / evidence.alpha0) * (digamma_unchecked(a + 1.0) - psi0);
  }
  // Rounding can leave a tiny negative value when one alpha dominates.
  return std::max(au, 0.0);
}

double epistemic(const TokenEvidence& evidence) {
  return static_cast<double>(evidence.k) / (evidence.alpha0 + evidence.k);
}

TokenUncertainty assess(const TokenEvidence& evidence) {
  TokenUncertainty u;
  u.au = aleatoric(evidence);
  u.eu = epistemic(evidence);
  u.reliability = token_reliability(u.au, u.eu);
  return u;
}

TokenUncertainty assess(const LogitsRecord& record, int k, double clamp_floor) {
  return assess(build_evidence(record, k, clamp_floor));
}

TokenUncertainty assess_logits(std::span<const double> sorted_logits, int k,
                               double clamp_floor) {
  double alphas[64];
  double* buf = alphas;
  std::vector<double> heap;
  if (k > 64) {
    heap.resize(k);
    buf = heap.data();
  }
  double alpha0 = 0.0;
  for (int i = 0; i < k; ++i) {
    buf[i] = std::max(sorted_logits[i], clamp_floor);
    alpha0 += buf[i];
  }
  const double psi0 = digamma_unchecked(alpha0 + 1.0);
  double au = 0.0;
  for (int i = 0; i < k; ++i) {
    au -= (buf[i] / alpha0) * (digamma_unchecked(buf[i] + 1.0) - psi0);
  }
  TokenUncertainty u;
  u.au = std::max(au, 0.0);
  u.eu = k / (alpha0 + k);
  u.reliability = -u.au * u.eu;
  return u;
}

Quadrant classify_quadrant(const TokenUncertainty& u, const QuadrantThresholds& t) {
  const bool high_au = u.au > t.au_threshold;
  const bool high_eu = u.eu > t.eu_threshold;
  if (high_au && high_eu) return Quadrant::kI;
  if (high_eu) return Quadrant::kII;
  if (high_au) return Quadrant::kIV;
  return Quadrant::kIII;
}

QuadrantThresholds response_mean_thresholds(std::span<const TokenUncertainty> tokens) {
  QuadrantThresholds t;
  t.mode = ThresholdMode::kResponseMean;
  if (tokens.empty()) return t;
  for (const auto& u : tokens) {
    t.au_threshold += u.au;
    t.eu_threshold += u.eu;
  }
  t.au_threshold /= static_cast<double>(tokens.size());
  t.eu_threshold /= static_cast<double>(tokens.size());
  return t;
}

std::vector<double> softmax(std::span<const double> logits, double temperature) {
  std::vector<double> p(logits.size());
  if (logits.empty()) return p;
  const double top = *std::max_element(logits.begin(), logits.end());
  double total = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    p[i] = std::exp((logits[i] - top) / temperature);
    total += p[i];
  }
  for (double& v : p) v /= total;
  return p;
}

namespace {

std::vector<double> leading_logits(const LogitsRecord& record, int k) {
  check_width(k, record.topk.size());
  std::vector<double> logits(k);
  for (int i = 0; i < k; ++i) logits[i] = record.topk[i].logit;
  return logits;
}

// log-sum-exp of the span.
double log_normalizer(std::span<const double> logits) {
  const double top = *std::max_element(logits.begin(), logits.end());
  double total = 0.0;
  for (double z : logits) total += std::exp(z - top);
  return top + std::log(total);
}

}  // namespace

MaxProbScore baseline_maxprob(const LogitsRecord& record, int k) {
  const auto logits = leading_logits(record, k);
  MaxProbScore score;
  std::size_t rank = logits.size() - 1;
  const auto chosen = record.chosen_rank();
  if (chosen && *chosen < logits.size()) {
    rank = *chosen;
  } else {
    score.chosen_absent = true;
  }
  score.log_prob = logits[rank] - log_normalizer(logits);
  return score;
}

double baseline_entropy(std::span<const double> logits) {
  const double lz = log_normalizer(logits);
  double h = 0.0;
  for (double z : logits) {
    const double log_p = z - lz;
    h -= std::exp(log_p) * log_p;
  }
  return std::max(h, 0.0);
}

double baseline_entropy(const LogitsRecord& record, int k) {
  return baseline_entropy(leading_logits(record, k));
}

double entropy_reliability(double entropy) { return 1.0 / std::max(entropy, 1e-12); }

}  // namespace logtoku
