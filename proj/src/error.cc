#include "logtoku/error.h"

#include <string>

namespace logtoku {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDomain: return "domain";
    case ErrorCode::kInsufficientEvidence: return "insufficient-evidence";
    case ErrorCode::kMalformedRecord: return "malformed-record";
    case ErrorCode::kBadSchema: return "bad-schema";
    case ErrorCode::kNormalizedInput: return "normalized-input";
    case ErrorCode::kUnsortedTopk: return "unsorted-topk";
    case ErrorCode::kStepGap: return "step-gap";
    case ErrorCode::kTrailingData: return "trailing-data";
    case ErrorCode::kEmptyResponse: return "empty-response";
    case ErrorCode::kMalformedGrouping: return "malformed-grouping";
    case ErrorCode::kInvalidDecision: return "invalid-decision";
    case ErrorCode::kUndefinedAuroc: return "undefined-auroc";
    case ErrorCode::kJoin: return "join";
    case ErrorCode::kPrecondition: return "precondition";
    case ErrorCode::kInvalidLabels: return "invalid-labels";
    case ErrorCode::kDataset: return "dataset";
    case ErrorCode::kUnknownSuite: return "unknown-suite";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

ParseError::ParseError(ErrorCode code, std::size_t line, const std::string& message)
    : Error(code, "line " + std::to_string(line) + ": " + message), line_(line) {}

}  // namespace logtoku
