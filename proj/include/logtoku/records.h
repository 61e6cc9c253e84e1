#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "logtoku/error.h"

namespace logtoku {

inline constexpr const char* kSchemaTag = "logtoku/1";
inline constexpr int kDefaultStoredK = 40;

struct TopkEntry {
  std::int64_t token_id = 0;
  std::string text;
  double logit = 0.0;  // raw pre-softmax score, never a log-probability

  bool operator==(const TopkEntry&) const = default;
};

// One generation step. topk is sorted by logit, descending; equal logits are
// ordered by ascending token id.
struct LogitsRecord {
  std::int64_t step = 0;
  std::int64_t chosen_id = 0;
  std::string chosen_text;
  std::vector<TopkEntry> topk;
  std::optional<std::int64_t> word_group;
  std::optional<bool> is_critical;

  bool operator==(const LogitsRecord&) const = default;

  // Index of chosen_id inside topk, if stored.
  std::optional<std::size_t> chosen_rank() const;
  // The chosen token fell outside the stored top-k.
  bool truncated() const { return !chosen_rank().has_value(); }
};

struct StreamHeader {
  std::string schema = kSchemaTag;
  std::int64_t k_stored = kDefaultStoredK;
  std::string model_name;
  std::string prompt;
  std::map<std::string, std::string> meta;

  bool operator==(const StreamHeader&) const = default;
};

struct ResponseDocument {
  StreamHeader header;
  std::vector<LogitsRecord> records;
  std::optional<bool> label;

  bool operator==(const ResponseDocument&) const = default;

  // header.meta["response_id"] when present.
  std::optional<std::string> response_id() const;
};

// Structural checks shared by the parser and by programmatic builders:
// non-empty topk, finite logits, descending order with id tie-break.
std::optional<Error> validate_record(const LogitsRecord& record);

}  // namespace logtoku
