#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "logtoku/eval.h"
#include "logtoku/synthetic.h"
#include "oracles.h"

using namespace logtoku;

TEST(Auroc, Examples) {
  EXPECT_DOUBLE_EQ(auroc(std::vector<double>{0.9, 0.8, 0.1}, {true, true, false}), 1.0);
  EXPECT_DOUBLE_EQ(auroc(std::vector<double>{0.5, 0.5}, {true, false}), 0.5);
  EXPECT_DOUBLE_EQ(auroc(std::vector<double>{0.1, 0.4, 0.35, 0.8}, {false, false, true, true}), 0.75);
  try {
    auroc(std::vector<double>{0.1, 0.2}, {true, true});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUndefinedAuroc);
  }
}

TEST(Auroc, PairsOracleAndMonotoneInvariance) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> s(60);
    std::vector<bool> y(60);
    for (std::size_t i = 0; i < s.size(); ++i) {
      s[i] = static_cast<double>(rng() % 20) / 7.0;  // many ties
      y[i] = rng() % 3 == 0;
    }
    y[0] = true;
    y[1] = false;
    const double a = auroc(s, y);
    EXPECT_NEAR(a, oracle::auroc_pairs(s, y), 1e-12);
    std::vector<double> t(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) t[i] = std::exp(3 * s[i]) - 5;
    EXPECT_NEAR(auroc(t, y), a, 1e-12);
  }
}

TEST(Curve, Examples) {
  const std::vector<ReliabilityDelta> d{{0.9, 1}, {0.5, 1}, {0.1, -1}};
  const auto c = accumulated_score_curve(d);
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c[0].cumulative_score, 1);
  EXPECT_EQ(c[1].cumulative_score, 2);
  EXPECT_EQ(c[2].cumulative_score, 1);
  EXPECT_EQ(c[2].rank, 3u);
}

TEST(Curve, MatchesSortPrefixOracle) {
  std::mt19937_64 rng(4);
  std::vector<ReliabilityDelta> d(500);
  std::vector<double> rel;
  std::vector<int> delta;
  for (auto& x : d) {
    x.reliability = static_cast<double>(rng() % 50);
    x.score_delta = static_cast<int>(rng() % 5) - 2;
    rel.push_back(x.reliability);
    delta.push_back(x.score_delta);
  }
  const auto c = accumulated_score_curve(d);
  const auto o = oracle::accumulated_curve(rel, delta);
  ASSERT_EQ(c.size(), o.size());
  for (std::size_t i = 0; i < c.size(); ++i) EXPECT_EQ(c[i].cumulative_score, o[i]);
}

TEST(Sweep, Examples) {
  std::vector<ExpandItem> items{{0.1, 1, 2, {1, 2}}, {0.9, 1, 3, {1}}};
  const std::vector<double> one{0.5};
  EXPECT_EQ(sweep_thresholds(items, Indicator::kLogTokUEu, one).best_threshold, 0.5);
  EXPECT_EQ(sweep_thresholds(items, Indicator::kLogTokUEu, one).best_score, 3);
  EXPECT_EQ(max_achievable_score(items), 3);
  // Equal indicator values: every threshold scores alike, first wins.
  std::vector<ExpandItem> flat{{0.4, 1, 2, {1}}, {0.4, 1, 2, {1, 2}}};
  const std::vector<double> grid{0.1, 0.5, 0.9};
  const auto s = sweep_thresholds(flat, Indicator::kMaxProb, grid);
  EXPECT_EQ(s.best_threshold, 0.1);
  for (const auto& [t, score] : s.profile) EXPECT_EQ(score, s.best_score);
  EXPECT_THROW(sweep_thresholds(items, Indicator::kMaxProb, std::vector<double>{}), Error);
}

TEST(Sweep, SeparableSetReachesMaximum) {
  std::mt19937_64 rng(6);
  std::vector<ExpandItem> items;
  for (int i = 0; i < 200; ++i) {
    const bool both = rng() % 2;
    // Second class correct exactly when EU is below 0.4.
    const double eu = both ? 0.1 + 0.29 * (rng() % 100) / 100.0 : 0.41 + 0.5 * (rng() % 100) / 100.0;
    items.push_back({eu, 10, 11, both ? std::set<ClassId>{10, 11} : std::set<ClassId>{10}});
  }
  const auto s = sweep_thresholds(items, Indicator::kLogTokUEu, exhaustive_grid(items));
  EXPECT_EQ(s.best_score, max_achievable_score(items));
  EXPECT_EQ(total_expand_score(items, Indicator::kGreedyNever, 0.0), 200);
}

TEST(Compare, TwoIndicatorsTenResponses) {
  auto docs = synthetic::adversarial_family(10, 3);
  bool any_true = false, any_false = false;
  for (const auto& d : docs) (d.label.value() ? any_true : any_false) = true;
  ASSERT_TRUE(any_true && any_false);
  EvalConfig cfg;
  cfg.indicators = {kScoreLogTokU, kScoreEntropy};
  const auto t = compare_indicators(docs, {}, {}, cfg);
  EXPECT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.responses, 10u);
}

TEST(Compare, LogTokUBeatsEntropyOnAdversarialFamily) {
  const auto docs = synthetic::adversarial_family(400, 9);
  EvalConfig cfg;
  cfg.indicators = {kScoreLogTokU, kScoreEntropy};
  const auto t = compare_indicators(docs, {}, {}, cfg);
  EXPECT_GT(t.rows[0].auroc, t.rows[1].auroc);
}

TEST(Compare, ExternalScoresJoin) {
  const auto docs = synthetic::adversarial_family(6, 1);
  std::vector<ExternalScore> ext;
  for (std::size_t i = 0; i < docs.size(); ++i) ext.push_back({document_id(docs[i], i), "SE", double(i)});
  EvalConfig cfg;
  cfg.indicators = {kScoreLogTokU};
  const auto ok = compare_indicators(docs, {}, ext, cfg);
  ASSERT_EQ(ok.rows.size(), 2u);
  EXPECT_TRUE(ok.rows[1].external);
  EXPECT_FALSE(ok.external_average.has_value());

  ext.push_back({"ghost-17", "SE", 0.5});
  try {
    compare_indicators(docs, {}, ext, cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kJoin);
    EXPECT_NE(std::string(e.what()).find("ghost-17"), std::string::npos);
  }
}

TEST(Compare, LabelsFileOverridesDocuments) {
  auto docs = synthetic::adversarial_family(20, 2);
  std::vector<LabelEntry> labels;
  for (std::size_t i = 0; i < docs.size(); ++i) labels.push_back({document_id(docs[i], i), i % 2 == 0});
  for (auto& d : docs) d.label.reset();
  EvalConfig cfg;
  cfg.indicators = {kScoreMaxProb};
  EXPECT_NO_THROW(compare_indicators(docs, labels, {}, cfg));
  EXPECT_THROW(compare_indicators(docs, {}, {}, cfg), Error);
}

TEST(Parsing, LabelsAndExternalScores) {
  const auto l = parse_labels("{\"response_id\":\"a\",\"label\":true}\n\n{\"response_id\":\"b\",\"label\":false}\n");
  ASSERT_EQ(l.size(), 2u);
  EXPECT_FALSE(l[1].label);
  try {
    parse_external_scores("{\"response_id\":\"a\",\"indicator\":\"SE\",\"score\":1.0}\n{\"response_id\":1}\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(ExpandItem, FromDataset) {
  const auto docs = synthetic::expand_game_dataset(5, 4);
  for (const auto& d : docs) {
    ASSERT_TRUE(has_gold(d));
    const auto item = expand_item(d, Indicator::kLogTokUEu, {});
    EXPECT_NE(item.top1, item.top2);
    EXPECT_FALSE(item.gold.empty());
  }
  auto bare = docs[0];
  bare.header.meta.erase("gold");
  EXPECT_THROW(expand_item(bare, Indicator::kMaxProb, {}), Error);
}
