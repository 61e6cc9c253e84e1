#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "logtoku/decoding.h"
#include "logtoku/error.h"

using namespace logtoku;

TEST(Temperature, Mapping) {
  const TemperaturePolicy p;
  EXPECT_DOUBLE_EQ(effective_temperature(0.0, p), 1.0);
  EXPECT_NEAR(effective_temperature(0.5, p), std::exp(-1.0), 1e-15);
  EXPECT_DOUBLE_EQ(effective_temperature(0.999, {1.0, 0.1, 50.0}), 0.1);
  EXPECT_THROW(validate({1.0, 2.0, 1.0}), Error);
  EXPECT_THROW(validate({1.0, 0.1, -1.0}), Error);
}

TEST(Sampler, ColdTemperatureIsArgmax) {
  Sampler s(1);
  const std::vector<double> z{10, 0};
  int first = 0;
  for (int i = 0; i < 10000; ++i) first += s.sample(z, 0.01) == 0;
  EXPECT_GT(first / 1e4, 0.999);
}

TEST(Sampler, FairCoin) {
  Sampler s(2);
  const std::vector<double> z{1, 1};
  int first = 0;
  for (int i = 0; i < 10000; ++i) first += s.sample(z, 1.0) == 0;
  EXPECT_NEAR(first / 1e4, 0.5, 0.02);
}

TEST(Sampler, FrequenciesFollowSoftmax) {
  Sampler s(3);
  const std::vector<double> z{2.0, 1.0, 0.0};
  const double t = 0.7;
  std::vector<int> counts(3);
  const int n = 200000;
  for (int i = 0; i < n; ++i) ++counts[s.sample(z, t)];
  double total = 0.0;
  for (double v : z) total += std::exp(v / t);
  for (int i = 0; i < 3; ++i) {
    const double p = std::exp(z[i] / t) / total;
    EXPECT_NEAR(counts[i] / double(n), p, 4 * std::sqrt(p * (1 - p) / n));
  }
}

TEST(Sampler, SeedDeterminism) {
  Sampler a(99), b(99);
  const std::vector<double> z{0.3, 0.2, 0.1, 0.0};
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.sample(z, 1.0), b.sample(z, 1.0));
}

TEST(Expand, Rules) {
  EXPECT_TRUE(decide_expand(0.2, Indicator::kLogTokUEu, 0.3));
  EXPECT_FALSE(decide_expand(0.3, Indicator::kLogTokUEu, 0.3));
  EXPECT_TRUE(decide_expand(0.9, Indicator::kMaxProb, 0.5));
  EXPECT_TRUE(decide_expand(1.2, Indicator::kEntropy, 1.0));
  for (double v : {-1e9, 0.0, 1e9}) {
    EXPECT_FALSE(decide_expand(v, Indicator::kGreedyNever, 0.5));
    EXPECT_TRUE(decide_expand(v, Indicator::kTop2Always, 0.5));
  }
  EXPECT_EQ(parse_indicator(indicator_name(Indicator::kEntropy)), Indicator::kEntropy);
  EXPECT_THROW(parse_indicator("nope"), Error);
}

TEST(MultiLabel, Scores) {
  const std::set<ClassId> gold{1, 2};
  EXPECT_EQ(score_multilabel(std::vector<ClassId>{1}, gold), 1);
  EXPECT_EQ(score_multilabel(std::vector<ClassId>{1, 2}, gold), 2);
  EXPECT_EQ(score_multilabel(std::vector<ClassId>{1, 3}, gold), 0);
  EXPECT_EQ(score_multilabel(std::vector<ClassId>{3}, gold), -1);
  try {
    score_multilabel(std::vector<ClassId>{1, 1}, gold);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidDecision);
  }
}
