#include <cmath>
#include <random>
#include <vector>

#include <boost/math/special_functions/digamma.hpp>
#include <gtest/gtest.h>

#include "logtoku/error.h"
#include "logtoku/evidence.h"
#include "oracles.h"

using namespace logtoku;

namespace {

LogitsRecord record_of(std::vector<double> logits, std::int64_t chosen = 0) {
  LogitsRecord r;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    r.topk.push_back({static_cast<std::int64_t>(i), "t" + std::to_string(i), logits[i]});
  }
  r.chosen_id = chosen;
  return r;
}

TokenEvidence evidence_of(std::vector<double> alphas) {
  TokenEvidence e;
  e.k = static_cast<int>(alphas.size());
  for (double a : alphas) e.alpha0 += a;
  e.alphas = std::move(alphas);
  return e;
}

// Closed form evaluated with an unrelated digamma.
double au_boost(const std::vector<double>& a) {
  double a0 = 0.0;
  for (double x : a) a0 += x;
  double s = 0.0;
  for (double x : a) s -= x / a0 * (boost::math::digamma(x + 1) - boost::math::digamma(a0 + 1));
  return s;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kIo;
}

}  // namespace

TEST(Evidence, TopKLogitsBecomeAlphas) {
  const auto e = build_evidence(record_of({5.0, 3.0, 2.0}), 3);
  EXPECT_EQ(e.alphas, (std::vector<double>{5, 3, 2}));
  EXPECT_DOUBLE_EQ(e.alpha0, 10.0);
  EXPECT_EQ(e.clamped_count, 0);
}

TEST(Evidence, NonPositiveLogitsClamp) {
  const auto e = build_evidence(record_of({5.0, -1.0}), 2);
  EXPECT_EQ(e.alphas, (std::vector<double>{5, 1e-6}));
  EXPECT_EQ(e.clamped_count, 1);
}

TEST(Evidence, Errors) {
  EXPECT_EQ(code_of([] { build_evidence(record_of({3, 2, 1}), 5); }), ErrorCode::kInsufficientEvidence);
  EXPECT_EQ(code_of([] { build_evidence(record_of({3, NAN, 1}), 3); }), ErrorCode::kMalformedRecord);
}

TEST(Aleatoric, Examples) {
  EXPECT_NEAR(aleatoric(evidence_of({1, 1})), 0.5, 1e-12);
  EXPECT_DOUBLE_EQ(aleatoric(evidence_of({7.5})), 0.0);
}

TEST(Aleatoric, MonteCarloTwoOne) {
  const auto mc = oracle::dirichlet_expected_entropy({2, 1}, 100000, 3);
  EXPECT_NEAR(aleatoric(evidence_of({2, 1})), mc.mean, 3 * mc.standard_error);
}

TEST(Aleatoric, AgreesWithBoostClosedForm) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(1e-6, 60.0);
  for (int i = 0; i < 1000; ++i) {
    std::vector<double> a(1 + rng() % 12);
    for (double& x : a) x = u(rng);
    EXPECT_NEAR(aleatoric(evidence_of(a)), au_boost(a), 1e-9);
  }
}

TEST(Epistemic, Examples) {
  EXPECT_DOUBLE_EQ(epistemic(evidence_of({1, 1})), 0.5);
  EXPECT_DOUBLE_EQ(epistemic(evidence_of({9, 9, 9, 9})), 0.1);
  EXPECT_NEAR(epistemic(evidence_of({5, 3, 2})), 3.0 / 13.0, 1e-15);
}

TEST(Reliability, Product) {
  EXPECT_DOUBLE_EQ(token_reliability(0.5, 0.5), -0.25);
  EXPECT_EQ(token_reliability(0.0, 0.7), 0.0);
  EXPECT_NEAR(token_reliability(0.9, 0.8), -0.72, 1e-15);
}

TEST(Quadrant, Definition) {
  const QuadrantThresholds t{0.5, 0.5, ThresholdMode::kAbsolute};
  EXPECT_EQ(classify_quadrant({0.9, 0.9, 0, Quadrant::kUnclassified}, t), Quadrant::kI);
  EXPECT_EQ(classify_quadrant({0.1, 0.9, 0, Quadrant::kUnclassified}, t), Quadrant::kII);
  EXPECT_EQ(classify_quadrant({0.1, 0.1, 0, Quadrant::kUnclassified}, t), Quadrant::kIII);
  EXPECT_EQ(classify_quadrant({0.9, 0.1, 0, Quadrant::kUnclassified}, t), Quadrant::kIV);
  EXPECT_EQ(classify_quadrant({0.5, 0.5, 0, Quadrant::kUnclassified}, t), Quadrant::kIII);
}

TEST(Quadrant, BarShapesAtResponseMeans) {
  std::vector<double> low(10, 0.5), moderate(10, 0.1), huge(10, 0.1), high(10, 30.0);
  moderate[0] = 5.0;
  huge[0] = 60.0;
  std::vector<TokenUncertainty> tokens;
  for (const auto& z : {low, moderate, huge, high}) tokens.push_back(assess(record_of(z), 10));
  const auto t = response_mean_thresholds(tokens);
  EXPECT_EQ(classify_quadrant(tokens[0], t), Quadrant::kI);
  EXPECT_EQ(classify_quadrant(tokens[1], t), Quadrant::kII);
  EXPECT_EQ(classify_quadrant(tokens[2], t), Quadrant::kIII);
  EXPECT_EQ(classify_quadrant(tokens[3], t), Quadrant::kIV);
}

TEST(Baselines, MaxProb) {
  EXPECT_NEAR(baseline_maxprob(record_of({2, 2}), 2).log_prob, std::log(0.5), 1e-15);
  EXPECT_EQ(baseline_maxprob(record_of({1}), 1).log_prob, 0.0);
  // Two logits whose softmax gives the chosen token weight 0.377.
  const double gap = std::log(0.623 / 0.377);
  EXPECT_NEAR(baseline_maxprob(record_of({gap, 0.0}, 1), 2).log_prob, -0.9755, 1e-4);
}

TEST(Baselines, MaxProbAbsentChosenUsesLowestEntry) {
  const auto s = baseline_maxprob(record_of({3, 1}, 99), 2);
  EXPECT_TRUE(s.chosen_absent);
  EXPECT_NEAR(s.log_prob, 1 - std::log(std::exp(3.0) + std::exp(1.0)), 1e-14);
}

TEST(Baselines, Entropy) {
  EXPECT_NEAR(baseline_entropy(record_of({2, 2}), 2), std::log(2.0), 1e-15);
  EXPECT_NEAR(baseline_entropy(record_of({100, 0}), 2), 0.0, 1e-40);
  EXPECT_NEAR(baseline_entropy(record_of({3, 2, 1}), 3), oracle::softmax_entropy({3, 2, 1}), 1e-15);
}

TEST(Properties, BoundsAndMonotoneEvidence) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-5.0, 50.0);
  for (int i = 0; i < 10000; ++i) {
    const int k = 1 + static_cast<int>(rng() % 10);
    std::vector<double> z(k);
    for (double& x : z) x = u(rng);
    std::sort(z.begin(), z.end(), std::greater<>());
    const auto e = build_evidence(z, k);
    const double au = aleatoric(e), eu = epistemic(e);
    ASSERT_GE(au, 0.0);
    ASSERT_LE(au, std::log(k) + 1e-12);
    ASSERT_GT(eu, 0.0);
    ASSERT_LT(eu, 1.0);
    auto scaled = e;
    const double c = 1.0 + std::uniform_real_distribution<double>(1e-3, 10.0)(rng);
    for (double& a : scaled.alphas) a *= c;
    scaled.alpha0 *= c;
    ASSERT_LT(epistemic(scaled), eu);
  }
}

TEST(Properties, ConcentrationLimitIsShannonEntropy) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  for (int i = 0; i < 100; ++i) {
    std::vector<double> a(2 + rng() % 9);
    double a0 = 0.0;
    for (double& x : a) a0 += (x = u(rng));
    double h = 0.0;
    for (double x : a) h -= x / a0 * std::log(x / a0);
    for (double& x : a) x *= 1e5;
    EXPECT_LT(std::abs(aleatoric(evidence_of(a)) - h), 0.01);
  }
}

TEST(FastPath, MatchesRecordPath) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(-3.0, 30.0);
  for (int i = 0; i < 1000; ++i) {
    std::vector<double> z(20);
    for (double& x : z) x = u(rng);
    std::sort(z.begin(), z.end(), std::greater<>());
    const auto a = assess_logits(z, 10);
    const auto b = assess(build_evidence(z, 10));
    EXPECT_DOUBLE_EQ(a.au, b.au);
    EXPECT_DOUBLE_EQ(a.eu, b.eu);
  }
}
