#include <cstring>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "logtoku/synthetic.h"
#include "logtoku/wire.h"

using namespace logtoku;

namespace {

const char* kHeader = R"({"schema":"logtoku/1","k_stored":2,"model_name":"m","prompt":"p","meta":{}})";

std::string doc(std::initializer_list<const char*> lines) {
  std::string out;
  for (const char* l : lines) out += std::string(l) + "\n";
  return out;
}

ParseError parse_error(const std::string& bytes) {
  try {
    parse_documents(bytes);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "accepted: " << bytes;
  return ParseError(ErrorCode::kIo, 0, "");
}

std::vector<StreamEvent> events(const std::string& bytes) {
  std::istringstream in(bytes);
  StreamReader reader(in);
  std::vector<StreamEvent> out;
  while (auto ev = reader.next()) out.push_back(std::move(*ev));
  return out;
}

}  // namespace

TEST(Wire, HappyPath) {
  const auto d = parse_document(doc({kHeader, R"({"step":0,"chosen_id":1,"chosen_text":"a","topk":[[1,"a",2.0],[2,"b",1.0]]})",
                                     R"({"step":1,"chosen_id":2,"chosen_text":"b","topk":[[1,"a",3.5],[2,"b",3.5]]})"}));
  EXPECT_EQ(d.records.size(), 2u);
  EXPECT_EQ(d.header.k_stored, 2);
  EXPECT_FALSE(d.label.has_value());
}

TEST(Wire, EmptyDocumentIsHeaderOnly) {
  ResponseDocument d;
  d.header.model_name = "m";
  const auto text = write_document(d);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1);
  EXPECT_EQ(parse_document(text), d);
}

TEST(Wire, RealFormatting) {
  EXPECT_EQ(format_real(2.0), "2.0");
  EXPECT_EQ(format_real(0.1), "0.1");
  EXPECT_EQ(format_real(-0.0), "-0.0");
  EXPECT_EQ(format_real(1e-6), "1e-06");
  for (double v : {2.0, 0.1, 1.0 / 3.0, -7.25e300, 5e-324, 123456789.0}) {
    const auto s = format_real(v);
    const double back = std::strtod(s.c_str(), nullptr);
    EXPECT_EQ(std::memcmp(&back, &v, sizeof v), 0) << s;
  }
}

TEST(Wire, Errors) {
  EXPECT_EQ(parse_error(doc({kHeader, R"({"step":0,"chosen_id":1,"chosen_text":"a","topk":[[1,"a",NaN]]})"})).line(), 2u);
  EXPECT_EQ(parse_error(doc({kHeader, R"({"step":0,"chosen_id":1,"chosen_text":"a","topk":[[1,"a","NaN"]]})"})).code(),
            ErrorCode::kMalformedRecord);
  EXPECT_EQ(parse_error(doc({R"({"schema":"logtoku/2","k_stored":2,"model_name":"m","prompt":"p","meta":{}})"})).code(),
            ErrorCode::kBadSchema);
  EXPECT_EQ(parse_error(doc({R"({"schema":"logtoku/1","k_stored":2,"model_name":"m","prompt":"p","meta":{},"normalized":true})"})).code(),
            ErrorCode::kNormalizedInput);
  EXPECT_EQ(parse_error(doc({kHeader, R"({"step":0,"chosen_id":1,"chosen_text":"a","topk":[[1,"a",1.0],[2,"b",2.0]]})"})).code(),
            ErrorCode::kUnsortedTopk);
  EXPECT_EQ(parse_error(doc({kHeader, R"({"step":0,"chosen_id":2,"chosen_text":"a","topk":[[2,"a",1.0],[1,"b",1.0]]})"})).code(),
            ErrorCode::kUnsortedTopk);
  EXPECT_EQ(parse_error(doc({kHeader, R"({"step":1,"chosen_id":1,"chosen_text":"a","topk":[[1,"a",1.0]]})"})).code(),
            ErrorCode::kStepGap);
  EXPECT_EQ(parse_error(doc({kHeader, R"({"label":true})", R"({"step":0,"chosen_id":1,"chosen_text":"a","topk":[[1,"a",1.0]]})"})).code(),
            ErrorCode::kTrailingData);
}

TEST(Wire, RoundTripRandomDocuments) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 2000; ++i) {
    const auto d = synthetic::random_document(rng, 12);
    const auto text = write_document(d);
    const auto back = parse_document(text);
    ASSERT_EQ(back, d) << text;
    ASSERT_EQ(write_document(back), text);
  }
}

TEST(Wire, CanonicalFormIsAFixpoint) {
  const std::string loose =
      R"({ "prompt" : "p", "schema":"logtoku/1","meta":{"response_id":"r"},"model_name":"m","k_stored":2 })" "\n"
      R"({"topk":[[1,"a",2],[2,"b",1e0]],"chosen_text":"a","chosen_id":1,"step":0})" "\n";
  const auto once = write_document(parse_document(loose));
  EXPECT_EQ(write_document(parse_document(once)), once);
  EXPECT_NE(once, loose);
}

TEST(Stream, ThreeRecordsInOrder) {
  const auto ev = events(doc({kHeader, R"({"step":0,"chosen_id":1,"chosen_text":"a","topk":[[1,"a",1.0]]})",
                              R"({"step":1,"chosen_id":1,"chosen_text":"a","topk":[[1,"a",1.0]]})",
                              R"({"step":2,"chosen_id":1,"chosen_text":"a","topk":[[1,"a",1.0]]})"}));
  ASSERT_EQ(ev.size(), 4u);
  for (std::int64_t s = 0; s < 3; ++s) EXPECT_EQ(std::get<StreamEvent::Record>(ev[s + 1].value).record.step, s);
}

TEST(Stream, CutMidLine) {
  std::string bytes = doc({kHeader, R"({"step":0,"chosen_id":1,"chosen_text":"a","topk":[[1,"a",1.0]]})",
                           R"({"step":1,"chosen_id":1,"chosen_text":"a","topk":[[1,"a",1.0]]})"});
  bytes += R"({"step":2,"chosen_id":1,"chos)";
  const auto ev = events(bytes);
  ASSERT_EQ(ev.size(), 4u);
  EXPECT_TRUE(std::holds_alternative<StreamEvent::Truncated>(ev.back().value));
  EXPECT_THROW(parse_documents(bytes), ParseError);
}

TEST(Stream, ResumesAfterCorruptLine) {
  const auto ev = events(doc({kHeader, R"({"step":0,"chosen_id":1,"chosen_text":"a","topk":[[1,"a",1.0]]})",
                              "{garbage", R"({"step":1,"chosen_id":1,"chosen_text":"a","topk":[[1,"a",1.0]]})"}));
  ASSERT_EQ(ev.size(), 4u);
  EXPECT_TRUE(std::holds_alternative<StreamEvent::Failure>(ev[2].value));
  EXPECT_EQ(ev[2].line, 3u);
  EXPECT_TRUE(std::holds_alternative<StreamEvent::Record>(ev[3].value));
}

TEST(Stream, MatchesWholeFileParse) {
  std::mt19937_64 rng(2);
  std::vector<ResponseDocument> docs;
  for (int i = 0; i < 300; ++i) docs.push_back(synthetic::random_document(rng, 8));
  const auto bytes = write_documents(docs);
  std::vector<ResponseDocument> streamed;
  for (auto& ev : events(bytes)) {
    if (auto* h = std::get_if<StreamEvent::Header>(&ev.value)) {
      streamed.push_back({h->header, {}, std::nullopt});
    } else if (auto* r = std::get_if<StreamEvent::Record>(&ev.value)) {
      streamed.back().records.push_back(r->record);
    } else if (auto* l = std::get_if<StreamEvent::Label>(&ev.value)) {
      streamed.back().label = l->label;
    } else {
      FAIL();
    }
  }
  EXPECT_EQ(streamed, parse_documents(bytes));
  EXPECT_EQ(streamed, docs);
}
