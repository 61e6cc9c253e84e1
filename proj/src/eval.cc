#include "logtoku/eval.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "logtoku/error.h"
#include "logtoku/evidence.h"

namespace logtoku {

double auroc(std::span<const double> scores, const std::vector<bool>& labels) {
  if (scores.size() != labels.size()) {
    throw Error(ErrorCode::kPrecondition, "scores and labels differ in length");
  }
  const std::size_t n = scores.size();
  std::size_t positives = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::isnan(scores[i])) throw Error(ErrorCode::kPrecondition, "NaN score");
    positives += labels[i] ? 1 : 0;
  }
  const std::size_t negatives = n - positives;
  if (positives == 0 || negatives == 0) {
    throw Error(ErrorCode::kUndefinedAuroc, "AUROC needs both correct and incorrect responses");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Mann-Whitney U from mid-ranks: tied groups share their average rank.
  double positive_rank_sum = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
    const double mid_rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) {
      if (labels[order[t]]) positive_rank_sum += mid_rank;
    }
    i = j + 1;
  }
  const double p = static_cast<double>(positives);
  const double u = positive_rank_sum - p * (p + 1.0) / 2.0;
  return u / (p * static_cast<double>(negatives));
}

std::vector<CurvePoint> accumulated_score_curve(std::span<const ReliabilityDelta> responses) {
  std::vector<std::size_t> order(responses.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return responses[a].reliability > responses[b].reliability;
  });
  std::vector<CurvePoint> curve;
  curve.reserve(responses.size());
  long total = 0;
  for (std::size_t r = 0; r < order.size(); ++r) {
    total += responses[order[r]].score_delta;
    curve.push_back({r + 1, total});
  }
  return curve;
}

int expand_item_score(const ExpandItem& item, Indicator kind, double threshold) {
  if (decide_expand(item.indicator_value, kind, threshold)) {
    const ClassId both[] = {item.top1, item.top2};
    return score_multilabel(both, item.gold);
  }
  const ClassId one[] = {item.top1};
  return score_multilabel(one, item.gold);
}

int total_expand_score(std::span<const ExpandItem> items, Indicator kind, double threshold) {
  int total = 0;
  for (const auto& item : items) total += expand_item_score(item, kind, threshold);
  return total;
}

int max_achievable_score(std::span<const ExpandItem> items) {
  int total = 0;
  for (const auto& item : items) {
    const int single = item.gold.count(item.top1) ? 1 : -1;
    const int second = item.gold.count(item.top2) ? 1 : -1;
    total += single + std::max(second, 0);
  }
  return total;
}

SweepResult sweep_thresholds(std::span<const ExpandItem> items, Indicator kind,
                             std::span<const double> grid) {
  if (grid.empty()) throw Error(ErrorCode::kPrecondition, "threshold grid is empty");
  SweepResult result;
  result.profile.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const int score = total_expand_score(items, kind, grid[i]);
    result.profile.emplace_back(grid[i], score);
    if (i == 0 || score > result.best_score) {
      result.best_score = score;
      result.best_threshold = grid[i];
    }
  }
  return result;
}

std::vector<double> exhaustive_grid(std::span<const ExpandItem> items) {
  std::vector<double> values;
  values.reserve(items.size() + 2);
  for (const auto& item : items) values.push_back(item.indicator_value);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  if (values.empty()) return {0.0};
  const double span = std::max(1.0, values.back() - values.front());
  values.insert(values.begin(), values.front() - span);
  values.push_back(values.back() + span);
  return values;
}

double indicator_confidence(double indicator_value, Indicator kind) {
  switch (kind) {
    case Indicator::kMaxProb:
    case Indicator::kEntropy:
      return indicator_value;
    case Indicator::kLogTokUEu:
      return -indicator_value;
    case Indicator::kGreedyNever:
    case Indicator::kTop2Always:
      return 0.0;
  }
  return 0.0;
}

double indicator_value(const LogitsRecord& record, Indicator kind, const AssessOptions& options) {
  switch (kind) {
    case Indicator::kMaxProb: {
      std::vector<double> logits;
      const int k = std::min<int>(options.k_evidence, static_cast<int>(record.topk.size()));
      for (int i = 0; i < k; ++i) logits.push_back(record.topk[i].logit);
      if (logits.empty()) throw Error(ErrorCode::kInsufficientEvidence, "record has no logits");
      return softmax(logits).front();
    }
    case Indicator::kEntropy:
      return baseline_entropy(record, options.k_evidence);
    case Indicator::kLogTokUEu:
      return epistemic(build_evidence(record, options.k_evidence, options.clamp_floor));
    case Indicator::kGreedyNever:
    case Indicator::kTop2Always:
      return 0.0;
  }
  return 0.0;
}

double response_score(std::span<const LogitsRecord> records, const std::string& indicator,
                      const AssessOptions& options) {
  if (records.empty()) throw Error(ErrorCode::kEmptyResponse, "response has no tokens");
  std::vector<double> token_scores;
  token_scores.reserve(records.size());
  for (const auto& r : records) {
    if (indicator == kScoreLogTokU) {
      token_scores.push_back(assess(r, options.k_evidence, options.clamp_floor).reliability);
    } else if (indicator == kScoreLogTokUEu) {
      token_scores.push_back(-epistemic(build_evidence(r, options.k_evidence, options.clamp_floor)));
    } else if (indicator == kScoreMaxProb) {
      token_scores.push_back(baseline_maxprob(r, options.k_evidence).log_prob);
    } else if (indicator == kScoreEntropy) {
      token_scores.push_back(entropy_reliability(baseline_entropy(r, options.k_evidence)));
    } else {
      throw Error(ErrorCode::kPrecondition, "unknown built-in indicator \"" + indicator + "\"");
    }
  }
  return response_reliability(token_scores, options.k_tokens);
}

namespace {

template <typename Fn>
void for_each_json_line(std::string_view bytes, Fn&& fn) {
  std::istringstream in{std::string(bytes)};
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto obj = nlohmann::json::parse(line, nullptr, false);
    if (obj.is_discarded() || !obj.is_object()) {
      throw ParseError(ErrorCode::kMalformedRecord, number, "line is not a JSON object");
    }
    fn(obj, number);
  }
}

std::string required_string(const nlohmann::json& obj, const char* key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    throw ParseError(ErrorCode::kMalformedRecord, line, std::string("\"") + key + "\" must be a string");
  }
  return it->get<std::string>();
}

std::optional<Indicator> expand_kind(const std::string& name) {
  if (name == kScoreMaxProb) return Indicator::kMaxProb;
  if (name == kScoreEntropy) return Indicator::kEntropy;
  if (name == kScoreLogTokUEu) return Indicator::kLogTokUEu;
  return std::nullopt;
}

}  // namespace

std::vector<LabelEntry> parse_labels(std::string_view bytes) {
  std::vector<LabelEntry> out;
  for_each_json_line(bytes, [&](const nlohmann::json& obj, std::size_t line) {
    auto it = obj.find("label");
    if (it == obj.end() || !it->is_boolean()) {
      throw ParseError(ErrorCode::kMalformedRecord, line, "\"label\" must be a boolean");
    }
    out.push_back({required_string(obj, "response_id", line), it->get<bool>()});
  });
  return out;
}

std::vector<ExternalScore> parse_external_scores(std::string_view bytes) {
  std::vector<ExternalScore> out;
  for_each_json_line(bytes, [&](const nlohmann::json& obj, std::size_t line) {
    auto it = obj.find("score");
    if (it == obj.end() || !it->is_number() || !std::isfinite(it->get<double>())) {
      throw ParseError(ErrorCode::kMalformedRecord, line, "\"score\" must be a finite number");
    }
    out.push_back({required_string(obj, "response_id", line),
                   required_string(obj, "indicator", line), it->get<double>()});
  });
  return out;
}

std::string document_id(const ResponseDocument& doc, std::size_t index) {
  if (auto id = doc.response_id()) return *id;
  return "doc" + std::to_string(index);
}

bool has_gold(const ResponseDocument& doc) { return doc.header.meta.count("gold") > 0; }

namespace {

std::set<ClassId> parse_gold(const std::string& text, const std::string& id) {
  std::set<ClassId> gold;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      gold.insert(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kDataset, "response " + id + ": bad gold class \"" + item + "\"");
    }
  }
  if (gold.empty()) throw Error(ErrorCode::kDataset, "response " + id + ": empty gold set");
  return gold;
}

}  // namespace

ExpandItem expand_item(const ResponseDocument& doc, Indicator kind, const AssessOptions& options) {
  const std::string id = doc.response_id().value_or("<unnamed>");
  auto gold = doc.header.meta.find("gold");
  if (gold == doc.header.meta.end()) {
    throw Error(ErrorCode::kDataset, "response " + id + " has no gold class set");
  }
  if (doc.records.empty()) throw Error(ErrorCode::kDataset, "response " + id + " has no records");
  const LogitsRecord* critical = &doc.records.front();
  for (const auto& r : doc.records) {
    if (r.is_critical.value_or(false)) {
      critical = &r;
      break;
    }
  }
  if (critical->topk.size() < 2) {
    throw Error(ErrorCode::kDataset, "response " + id + ": critical record stores fewer than 2 classes");
  }
  ExpandItem item;
  item.indicator_value = indicator_value(*critical, kind, options);
  item.top1 = critical->topk[0].token_id;
  item.top2 = critical->topk[1].token_id;
  item.gold = parse_gold(gold->second, id);
  return item;
}

ComparisonTable compare_indicators(std::span<const ResponseDocument> docs,
                                   std::span<const LabelEntry> labels,
                                   std::span<const ExternalScore> external,
                                   const EvalConfig& config) {
  ComparisonTable table;
  table.responses = docs.size();

  std::vector<std::string> ids;
  std::unordered_map<std::string, std::size_t> index_of;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    ids.push_back(document_id(docs[i], i));
    if (!index_of.emplace(ids.back(), i).second) {
      throw Error(ErrorCode::kJoin, "duplicate response id " + ids.back());
    }
  }

  std::vector<std::optional<bool>> label_of(docs.size());
  for (std::size_t i = 0; i < docs.size(); ++i) label_of[i] = docs[i].label;
  std::vector<std::string> unknown;
  for (const auto& l : labels) {
    auto it = index_of.find(l.response_id);
    if (it == index_of.end()) {
      unknown.push_back(l.response_id);
      continue;
    }
    label_of[it->second] = l.label;
  }
  std::vector<bool> flags(docs.size());
  std::vector<std::string> unlabeled;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (!label_of[i]) unlabeled.push_back(ids[i]);
    else flags[i] = *label_of[i];
  }
  auto join_list = [](const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
    return s;
  };
  if (!unknown.empty()) {
    throw Error(ErrorCode::kJoin, "labels name unknown response ids: " + join_list(unknown));
  }
  if (!unlabeled.empty()) {
    throw Error(ErrorCode::kPrecondition, "responses without a label: " + join_list(unlabeled));
  }

  const bool expand_game = !docs.empty() && std::all_of(docs.begin(), docs.end(), has_gold);
  if (expand_game) {
    std::vector<ExpandItem> items;
    for (const auto& d : docs) items.push_back(expand_item(d, Indicator::kMaxProb, config.assess));
    table.max_expand_score = max_achievable_score(items);
  }

  for (const auto& name : config.indicators) {
    ComparisonRow row;
    row.indicator = name;
    std::vector<double> scores;
    scores.reserve(docs.size());
    for (const auto& d : docs) scores.push_back(response_score(d.records, name, config.assess));
    row.auroc = auroc(scores, flags);
    if (expand_game) {
      if (auto kind = expand_kind(name)) {
        std::vector<ExpandItem> items;
        for (const auto& d : docs) items.push_back(expand_item(d, *kind, config.assess));
        const auto grid = config.threshold_grid.empty() ? exhaustive_grid(items) : config.threshold_grid;
        const auto sweep = sweep_thresholds(items, *kind, grid);
        row.best_expand_score = sweep.best_score;
        row.best_threshold = sweep.best_threshold;
      }
    }
    table.rows.push_back(std::move(row));
  }

  // External indicators, in first-appearance order.
  std::vector<std::string> external_names;
  std::unordered_map<std::string, std::vector<std::optional<double>>> external_scores;
  for (const auto& e : external) {
    auto it = index_of.find(e.response_id);
    if (it == index_of.end()) {
      unknown.push_back(e.response_id);
      continue;
    }
    auto [slot, inserted] = external_scores.try_emplace(e.indicator, docs.size());
    if (inserted) external_names.push_back(e.indicator);
    slot->second[it->second] = e.score;
  }
  if (!unknown.empty()) {
    throw Error(ErrorCode::kJoin, "external scores name unknown response ids: " + join_list(unknown));
  }
  std::map<std::string, double> external_auroc;
  for (const auto& name : external_names) {
    const auto& column = external_scores.at(name);
    std::vector<double> scores;
    std::vector<std::string> missing;
    for (std::size_t i = 0; i < docs.size(); ++i) {
      if (!column[i]) missing.push_back(ids[i]);
      else scores.push_back(*column[i]);
    }
    if (!missing.empty()) {
      throw Error(ErrorCode::kJoin, "external indicator " + name + " lacks scores for: " + join_list(missing));
    }
    ComparisonRow row;
    row.indicator = name;
    row.auroc = auroc(scores, flags);
    row.external = true;
    external_auroc[name] = row.auroc;
    table.rows.push_back(std::move(row));
  }
  static const char* kSampling[] = {"LN-E", "SE", "DSE", "LeS"};
  if (std::all_of(std::begin(kSampling), std::end(kSampling),
                  [&](const char* n) { return external_auroc.count(n) > 0; })) {
    double total = 0.0;
    for (const char* n : kSampling) total += external_auroc.at(n);
    table.external_average = total / 4.0;
  }
  return table;
}

}  // namespace logtoku
