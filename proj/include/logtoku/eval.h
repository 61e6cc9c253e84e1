#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "logtoku/aggregation.h"
#include "logtoku/decoding.h"
#include "logtoku/records.h"

namespace logtoku {

struct ScoredResponse {
  std::string response_id;
  std::map<std::string, double> scores;  // indicator name -> reliability
  std::optional<bool> label;
};

struct CurvePoint {
  std::size_t rank = 0;  // 1-based
  long cumulative_score = 0;
};

// Probability that a random positive outranks a random negative, ties
// counted one half. Throws Error(kUndefinedAuroc) unless both classes occur.
double auroc(std::span<const double> scores, const std::vector<bool>& labels);

struct ReliabilityDelta {
  double reliability = 0.0;
  int score_delta = 0;
};

// Stable sort by descending reliability, then prefix sums of the deltas.
std::vector<CurvePoint> accumulated_score_curve(std::span<const ReliabilityDelta> responses);

// One question of the expand game: the indicator value at the critical
// position and the two highest-ranked classes there.
struct ExpandItem {
  double indicator_value = 0.0;
  ClassId top1 = 0;
  ClassId top2 = 0;
  std::set<ClassId> gold;
};

int expand_item_score(const ExpandItem& item, Indicator kind, double threshold);
int total_expand_score(std::span<const ExpandItem> items, Indicator kind, double threshold);
// Best of answering one or two classes, per item.
int max_achievable_score(std::span<const ExpandItem> items);

struct SweepResult {
  double best_threshold = 0.0;
  int best_score = 0;
  std::vector<std::pair<double, int>> profile;  // (threshold, total score)
};

// Argmax over the grid; first on ties.
SweepResult sweep_thresholds(std::span<const ExpandItem> items, Indicator kind,
                             std::span<const double> grid);

// Every distinct indicator value plus one value beyond each end, enough to
// realize every achievable partition.
std::vector<double> exhaustive_grid(std::span<const ExpandItem> items);

// Ordering score for curves: larger means the indicator is more confident.
double indicator_confidence(double indicator_value, Indicator kind);

// Response-level indicators.
inline constexpr const char* kScoreLogTokU = "LogTokU";
inline constexpr const char* kScoreLogTokUEu = "LogTokU_EU";
inline constexpr const char* kScoreMaxProb = "MaxProb";
inline constexpr const char* kScoreEntropy = "Entropy";

struct EvalConfig {
  AssessOptions assess;
  std::vector<std::string> indicators{kScoreLogTokU, kScoreMaxProb, kScoreEntropy};
  std::vector<double> threshold_grid;  // empty = exhaustive per indicator
};

// Response reliability per built-in indicator, aggregated over the k_tokens
// least reliable positions.
double response_score(std::span<const LogitsRecord> records, const std::string& indicator,
                      const AssessOptions& options);

struct ExternalScore {
  std::string response_id;
  std::string indicator;
  double score = 0.0;
};

struct LabelEntry {
  std::string response_id;
  bool label = false;
};

std::vector<LabelEntry> parse_labels(std::string_view bytes);
std::vector<ExternalScore> parse_external_scores(std::string_view bytes);

struct ComparisonRow {
  std::string indicator;
  double auroc = 0.0;
  std::optional<int> best_expand_score;
  std::optional<double> best_threshold;
  bool external = false;
};

struct ComparisonTable {
  std::vector<ComparisonRow> rows;
  std::optional<double> external_average;  // mean AUROC of LN-E, SE, DSE, LeS
  std::size_t responses = 0;
  std::optional<int> max_expand_score;
};

// The response id of document i: its meta response_id or "doc<i>".
std::string document_id(const ResponseDocument& doc, std::size_t index);

// Labels come from the labels list when it names the response, else from the
// document's own label line. External scores are joined by response id; an
// id that matches no document throws Error(kJoin) naming it.
ComparisonTable compare_indicators(std::span<const ResponseDocument> docs,
                                   std::span<const LabelEntry> labels,
                                   std::span<const ExternalScore> external,
                                   const EvalConfig& config);

// Expand-game view of a document: meta "gold" holds comma-separated class
// ids; the critical record (is_critical, else the first) supplies the classes.
ExpandItem expand_item(const ResponseDocument& doc, Indicator kind, const AssessOptions& options);
bool has_gold(const ResponseDocument& doc);

// Indicator value at one record.
double indicator_value(const LogitsRecord& record, Indicator kind, const AssessOptions& options);

}  // namespace logtoku
