#include "logtoku/wire.h"

#include <charconv>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace logtoku {

using nlohmann::json;

std::string format_real(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  std::string out(buf, end);
  if (out.find_first_of(".en") == std::string::npos) out += ".0";
  return out;
}

namespace {

std::string quote(const std::string& s) {
  return json(s).dump(-1, ' ', false, json::error_handler_t::replace);
}

[[noreturn]] void fail(ErrorCode code, std::size_t line, const std::string& message) {
  throw ParseError(code, line, message);
}

std::int64_t get_int(const json& obj, const char* key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(ErrorCode::kMalformedRecord, line, std::string("missing \"") + key + "\"");
  if (!it->is_number_integer()) {
    fail(ErrorCode::kMalformedRecord, line, std::string("\"") + key + "\" must be an integer");
  }
  return it->get<std::int64_t>();
}

std::string get_string(const json& obj, const char* key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(ErrorCode::kMalformedRecord, line, std::string("missing \"") + key + "\"");
  if (!it->is_string()) {
    fail(ErrorCode::kMalformedRecord, line, std::string("\"") + key + "\" must be a string");
  }
  return it->get<std::string>();
}

StreamHeader header_from_json(const json& obj, std::size_t line) {
  StreamHeader h;
  const auto& schema = obj.at("schema");
  if (!schema.is_string() || schema.get<std::string>() != kSchemaTag) {
    fail(ErrorCode::kBadSchema, line, "schema must be \"" + std::string(kSchemaTag) + "\"");
  }
  if (auto it = obj.find("normalized"); it != obj.end()) {
    if (!it->is_boolean()) fail(ErrorCode::kBadSchema, line, "\"normalized\" must be a boolean");
    if (it->get<bool>()) {
      fail(ErrorCode::kNormalizedInput, line,
           "normalized values are not accepted; store raw pre-softmax logits");
    }
  }
  for (const auto& [key, value] : obj.items()) {
    if (key != "schema" && key != "k_stored" && key != "model_name" && key != "prompt" &&
        key != "meta" && key != "normalized") {
      fail(ErrorCode::kBadSchema, line, "unknown header field \"" + key + "\"");
    }
  }
  h.k_stored = get_int(obj, "k_stored", line);
  if (h.k_stored < 1) fail(ErrorCode::kBadSchema, line, "k_stored must be >= 1");
  h.model_name = get_string(obj, "model_name", line);
  h.prompt = get_string(obj, "prompt", line);
  if (auto it = obj.find("meta"); it != obj.end()) {
    if (!it->is_object()) fail(ErrorCode::kBadSchema, line, "\"meta\" must be an object");
    for (const auto& [key, value] : it->items()) {
      if (!value.is_string()) {
        fail(ErrorCode::kBadSchema, line, "meta value for \"" + key + "\" must be a string");
      }
      h.meta.emplace(key, value.get<std::string>());
    }
  }
  return h;
}

LogitsRecord record_from_json(const json& obj, std::size_t line) {
  LogitsRecord r;
  for (const auto& [key, value] : obj.items()) {
    if (key != "step" && key != "chosen_id" && key != "chosen_text" && key != "topk" &&
        key != "word_group" && key != "is_critical") {
      fail(ErrorCode::kMalformedRecord, line, "unknown record field \"" + key + "\"");
    }
  }
  r.step = get_int(obj, "step", line);
  r.chosen_id = get_int(obj, "chosen_id", line);
  r.chosen_text = get_string(obj, "chosen_text", line);
  auto topk = obj.find("topk");
  if (topk == obj.end() || !topk->is_array()) {
    fail(ErrorCode::kMalformedRecord, line, "\"topk\" must be an array");
  }
  r.topk.reserve(topk->size());
  for (const auto& entry : *topk) {
    if (!entry.is_array() || entry.size() != 3 || !entry[0].is_number_integer() ||
        !entry[1].is_string()) {
      fail(ErrorCode::kMalformedRecord, line, "topk entries must be [<id>, <text>, <logit>]");
    }
    if (!entry[2].is_number()) {
      fail(ErrorCode::kMalformedRecord, line, "logit must be a finite number");
    }
    r.topk.push_back({entry[0].get<std::int64_t>(), entry[1].get<std::string>(),
                      entry[2].get<double>()});
  }
  if (auto it = obj.find("word_group"); it != obj.end()) {
    if (!it->is_number_integer()) fail(ErrorCode::kMalformedRecord, line, "\"word_group\" must be an integer");
    r.word_group = it->get<std::int64_t>();
  }
  if (auto it = obj.find("is_critical"); it != obj.end()) {
    if (!it->is_boolean()) fail(ErrorCode::kMalformedRecord, line, "\"is_critical\" must be a boolean");
    r.is_critical = it->get<bool>();
  }
  if (auto err = validate_record(r)) fail(err->code(), line, err->what());
  return r;
}

}  // namespace

std::string write_header_line(const StreamHeader& header) {
  std::string out = "{\"schema\":" + quote(header.schema) +
                    ",\"k_stored\":" + std::to_string(header.k_stored) +
                    ",\"model_name\":" + quote(header.model_name) +
                    ",\"prompt\":" + quote(header.prompt) + ",\"meta\":{";
  bool first = true;
  for (const auto& [key, value] : header.meta) {
    if (!first) out += ',';
    first = false;
    out += quote(key) + ':' + quote(value);
  }
  out += "}}\n";
  return out;
}

std::string write_record_line(const LogitsRecord& record) {
  std::string out = "{\"step\":" + std::to_string(record.step) +
                    ",\"chosen_id\":" + std::to_string(record.chosen_id) +
                    ",\"chosen_text\":" + quote(record.chosen_text) + ",\"topk\":[";
  for (std::size_t i = 0; i < record.topk.size(); ++i) {
    const auto& e = record.topk[i];
    if (i) out += ',';
    out += '[' + std::to_string(e.token_id) + ',' + quote(e.text) + ',' + format_real(e.logit) + ']';
  }
  out += ']';
  if (record.word_group) out += ",\"word_group\":" + std::to_string(*record.word_group);
  if (record.is_critical) out += std::string(",\"is_critical\":") + (*record.is_critical ? "true" : "false");
  out += "}\n";
  return out;
}

std::string write_document(const ResponseDocument& doc) {
  std::string out = write_header_line(doc.header);
  for (const auto& r : doc.records) out += write_record_line(r);
  if (doc.label) out += std::string("{\"label\":") + (*doc.label ? "true" : "false") + "}\n";
  return out;
}

std::string write_documents(const std::vector<ResponseDocument>& docs) {
  std::string out;
  for (const auto& d : docs) out += write_document(d);
  return out;
}

std::optional<StreamEvent> StreamReader::next() {
  while (true) {
    buffer_.clear();
    if (!std::getline(in_, buffer_)) {
      if (buffer_.empty()) return std::nullopt;
    }
    ++line_;
    const bool terminated = !in_.eof();
    if (!buffer_.empty() && buffer_.back() == '\r') buffer_.pop_back();
    if (buffer_.empty()) {
      if (!terminated) return std::nullopt;
      continue;
    }
    return classify(buffer_, terminated);
  }
}

StreamEvent StreamReader::classify(const std::string& text, bool terminated) {
  StreamEvent ev;
  ev.line = line_;
  json obj = json::parse(text, nullptr, false);
  if (obj.is_discarded() || !obj.is_object()) {
    if (!terminated) {
      ev.value = StreamEvent::Truncated{line_, text};
    } else {
      ev.value = StreamEvent::Failure{
          ParseError(ErrorCode::kMalformedRecord, line_, "line is not a JSON object")};
    }
    return ev;
  }
  try {
    if (obj.contains("schema")) {
      ev.value = StreamEvent::Header{header_from_json(obj, line_)};
      in_document_ = true;
      labelled_ = false;
      next_step_ = 0;
      return ev;
    }
    if (!in_document_) fail(ErrorCode::kBadSchema, line_, "record before any header line");
    if (obj.contains("label")) {
      if (obj.size() != 1 || !obj["label"].is_boolean()) {
        fail(ErrorCode::kMalformedRecord, line_, "label line must be {\"label\":<bool>}");
      }
      if (labelled_) fail(ErrorCode::kTrailingData, line_, "second label line in one document");
      labelled_ = true;
      ev.value = StreamEvent::Label{obj["label"].get<bool>()};
      return ev;
    }
    if (labelled_) fail(ErrorCode::kTrailingData, line_, "record after the label line");
    LogitsRecord record = record_from_json(obj, line_);
    if (record.step != next_step_) {
      const std::int64_t expected = next_step_;
      if (record.step > next_step_) next_step_ = record.step + 1;
      fail(ErrorCode::kStepGap, line_,
           "expected step " + std::to_string(expected) + ", got " + std::to_string(record.step));
    }
    ++next_step_;
    ev.value = StreamEvent::Record{std::move(record)};
  } catch (const ParseError& e) {
    ev.value = StreamEvent::Failure{e};
  } catch (const json::exception& e) {
    ev.value = StreamEvent::Failure{ParseError(ErrorCode::kMalformedRecord, line_, e.what())};
  }
  return ev;
}

std::vector<ResponseDocument> parse_documents(std::string_view bytes) {
  std::istringstream in{std::string(bytes)};
  StreamReader reader(in);
  std::vector<ResponseDocument> docs;
  while (auto ev = reader.next()) {
    if (auto* h = std::get_if<StreamEvent::Header>(&ev->value)) {
      docs.push_back(ResponseDocument{std::move(h->header), {}, std::nullopt});
    } else if (auto* r = std::get_if<StreamEvent::Record>(&ev->value)) {
      docs.back().records.push_back(std::move(r->record));
    } else if (auto* l = std::get_if<StreamEvent::Label>(&ev->value)) {
      docs.back().label = l->label;
    } else if (auto* f = std::get_if<StreamEvent::Failure>(&ev->value)) {
      throw f->error;
    } else {
      const auto& t = std::get<StreamEvent::Truncated>(ev->value);
      throw ParseError(ErrorCode::kMalformedRecord, t.line, "input ends inside a line");
    }
  }
  return docs;
}

ResponseDocument parse_document(std::string_view bytes) {
  auto docs = parse_documents(bytes);
  if (docs.size() != 1) {
    throw ParseError(ErrorCode::kBadSchema, 1,
                     "expected exactly one document, found " + std::to_string(docs.size()));
  }
  return std::move(docs.front());
}

}  // namespace logtoku
