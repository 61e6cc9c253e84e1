#include "logtoku/records.h"

#include <cmath>
#include <string>

namespace logtoku {

std::optional<std::size_t> LogitsRecord::chosen_rank() const {
  for (std::size_t i = 0; i < topk.size(); ++i) {
    if (topk[i].token_id == chosen_id) return i;
  }
  return std::nullopt;
}

std::optional<std::string> ResponseDocument::response_id() const {
  auto it = header.meta.find("response_id");
  if (it == header.meta.end()) return std::nullopt;
  return it->second;
}

std::optional<Error> validate_record(const LogitsRecord& record) {
  if (record.topk.empty()) return Error(ErrorCode::kMalformedRecord, "topk is empty");
  for (std::size_t i = 0; i < record.topk.size(); ++i) {
    if (!std::isfinite(record.topk[i].logit)) {
      return Error(ErrorCode::kMalformedRecord, "non-finite logit at rank " + std::to_string(i));
    }
    if (i == 0) continue;
    const auto& prev = record.topk[i - 1];
    const auto& cur = record.topk[i];
    const bool ordered =
        prev.logit > cur.logit || (prev.logit == cur.logit && prev.token_id < cur.token_id);
    if (!ordered) {
      return Error(ErrorCode::kUnsortedTopk,
                   "topk not sorted descending at rank " + std::to_string(i));
    }
  }
  return std::nullopt;
}

}  // namespace logtoku
