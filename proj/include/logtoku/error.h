#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace logtoku {

enum class ErrorCode {
  kDomain,                // argument outside a function's domain
  kInsufficientEvidence,  // fewer stored logits than the requested width
  kMalformedRecord,
  kBadSchema,
  kNormalizedInput,  // header claims normalized values
  kUnsortedTopk,
  kStepGap,
  kTrailingData,  // records after a label line
  kEmptyResponse,
  kMalformedGrouping,
  kInvalidDecision,
  kUndefinedAuroc,
  kJoin,
  kPrecondition,
  kInvalidLabels,
  kDataset,
  kUnknownSuite,
  kIo,
};

const char* error_code_name(ErrorCode code);

// Every library failure is reported as an Error carrying a code so callers
// (notably the CLI) can map failures onto exit classes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Raised by the wire-format reader; line numbers are 1-based.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::size_t line, const std::string& message);

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace logtoku
