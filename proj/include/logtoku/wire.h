#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "logtoku/error.h"
#include "logtoku/records.h"

namespace logtoku {

// Line-delimited logtoku/1 documents. Line 1 of each document is a header
// object, then one object per step, then an optional {"label":<bool>} line.
// Several documents may be concatenated; each header starts a new one.

std::vector<ResponseDocument> parse_documents(std::string_view bytes);

// Exactly one document expected; throws ParseError otherwise.
ResponseDocument parse_document(std::string_view bytes);

std::string write_document(const ResponseDocument& doc);
std::string write_documents(const std::vector<ResponseDocument>& docs);

std::string write_header_line(const StreamHeader& header);
std::string write_record_line(const LogitsRecord& record);

// Shortest decimal that parses back to the same double, always carrying a
// fractional part or exponent ("2.0", "0.1", "1e-06").
std::string format_real(double value);

// Events produced by StreamReader, one per input line.
struct StreamEvent {
  struct Header {
    StreamHeader header;
  };
  struct Record {
    LogitsRecord record;
  };
  struct Label {
    bool label;
  };
  struct Failure {
    ParseError error;
  };
  // The input ended inside a line.
  struct Truncated {
    std::size_t line;
    std::string fragment;
  };

  std::variant<Header, Record, Label, Failure, Truncated> value;
  std::size_t line = 0;
};

// Incremental reader holding at most one line in memory. A bad line yields a
// Failure and reading resumes at the next line.
class StreamReader {
 public:
  explicit StreamReader(std::istream& in) : in_(in) {}

  std::optional<StreamEvent> next();

  std::size_t line() const { return line_; }

 private:
  StreamEvent classify(const std::string& text, bool terminated);

  std::istream& in_;
  std::string buffer_;
  std::size_t line_ = 0;
  bool in_document_ = false;
  bool labelled_ = false;
  std::int64_t next_step_ = 0;
};

}  // namespace logtoku
