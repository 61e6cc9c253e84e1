#include "commands.h"

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "logtoku/error.h"
#include "logtoku/eval.h"
#include "logtoku/report.h"
#include "logtoku/wire.h"

namespace logtoku::cli {

namespace {

// Builds one line-delimited JSON object with fields in insertion order.
class Line {
 public:
  Line& str(const char* key, const std::string& value) {
    return raw(key, nlohmann::json(value).dump(-1, ' ', false, nlohmann::json::error_handler_t::replace));
  }
  Line& real(const char* key, double value) { return raw(key, format_real(value)); }
  Line& integer(const char* key, long long value) { return raw(key, std::to_string(value)); }
  Line& boolean(const char* key, bool value) { return raw(key, value ? "true" : "false"); }
  Line& raw(const char* key, const std::string& value) {
    body_ += body_.empty() ? "{" : ",";
    body_ += '"';
    body_ += key;
    body_ += "\":";
    body_ += value;
    return *this;
  }
  std::string done() const { return (body_.empty() ? "{" : body_) + "}\n"; }

 private:
  std::string body_;
};

std::string read_all(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string read_file(const std::string& path, std::istream& stdin_stream) {
  if (path == "-") return read_all(stdin_stream);
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::kIo, "cannot open " + path);
  return read_all(f);
}

void write_file(const std::string& path, const std::string& bytes, std::ostream& out) {
  if (path == "-") {
    out << bytes;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::kIo, "cannot write " + path);
  f << bytes;
}

std::string census_json(const QuadrantCensus& census) {
  return fmt::format("{{\"I\":{},\"II\":{},\"III\":{},\"IV\":{}}}", census[0], census[1], census[2], census[3]);
}

int exit_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kMalformedRecord:
    case ErrorCode::kBadSchema:
    case ErrorCode::kNormalizedInput:
    case ErrorCode::kUnsortedTopk:
    case ErrorCode::kStepGap:
    case ErrorCode::kTrailingData:
      return kExitParse;
    case ErrorCode::kIo:
      return kExitIo;
    case ErrorCode::kUnknownSuite:
      return kExitUsage;
    default:
      return kExitPrecondition;
  }
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  if (text.empty()) return grid;
  // start:stop:step or a comma list.
  if (std::count(text.begin(), text.end(), ':') == 2) {
    double start = 0, stop = 0, step = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(text);
    in >> start >> c1 >> stop >> c2 >> step;
    if (!in || !(step > 0) || stop < start) {
      throw Error(ErrorCode::kPrecondition, "threshold grid must be start:stop:step with step > 0");
    }
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (std::size_t i = 0; i < count; ++i) grid.push_back(start + step * static_cast<double>(i));
    return grid;
  }
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      grid.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw Error(ErrorCode::kPrecondition, "bad threshold \"" + item + "\"");
    }
  }
  return grid;
}

// ---- analyze ---------------------------------------------------------------

struct AnalyzeState {
  const RunConfig& cfg;
  std::ostream& out;
  std::string response_id;
  std::size_t doc_index = 0;
  std::vector<LogitsRecord> records;
  bool open = false;
  bool table_header = false;

  void token_row(const LogitsRecord& r, const TokenUncertainty& u, int clamped) {
    const bool absolute = cfg.assess.quadrant_mode == ThresholdMode::kAbsolute;
    if (cfg.format == OutputFormat::kTable) {
      if (!table_header) {
        out << fmt::format("{:<12} {:>6} {:<16} {:>10} {:>10} {:>11} {:>4}\n", "response", "step", "token",
                           "AU", "EU", "reliability", "quad");
        table_header = true;
      }
      out << fmt::format("{:<12} {:>6} {:<16} {:>10.6f} {:>10.6f} {:>11.6f} {:>4}\n", response_id, r.step,
                         nlohmann::json(r.chosen_text).dump(-1, ' ', false, nlohmann::json::error_handler_t::replace),
                         u.au, u.eu, u.reliability, absolute ? quadrant_name(u.quadrant) : "");
    } else {
      Line line;
      line.str("type", "token").str("response_id", response_id).integer("step", r.step)
          .str("text", r.chosen_text).real("au", u.au).real("eu", u.eu).real("reliability", u.reliability)
          .integer("clamped", clamped);
      if (absolute) line.str("quadrant", std::string(quadrant_name(u.quadrant)));
      out << line.done();
    }
    out.flush();
  }

  void finish() {
    if (!open) return;
    open = false;
    if (records.empty()) {
      if (cfg.format == OutputFormat::kRecords) {
        out << Line().str("type", "response").str("response_id", response_id).integer("tokens", 0).done();
      }
      return;
    }
    const auto a = assess_response(records, cfg.assess);
    if (cfg.format == OutputFormat::kTable) {
      out << fmt::format("{:<12} response reliability {:.6f} over {} tokens (k_tokens {}); quadrants I={} II={} III={} IV={}\n",
                         response_id, a.response_reliability, a.tokens.size(), a.k_tokens,
                         a.quadrant_census[0], a.quadrant_census[1], a.quadrant_census[2], a.quadrant_census[3]);
    } else {
      std::string quads = "[";
      for (std::size_t i = 0; i < a.tokens.size(); ++i) {
        quads += (i ? ",\"" : "\"") + std::string(quadrant_name(a.tokens[i].quadrant)) + "\"";
      }
      quads += "]";
      out << Line().str("type", "response").str("response_id", response_id)
                 .integer("tokens", static_cast<long long>(a.tokens.size())).integer("k_tokens", a.k_tokens)
                 .real("reliability", a.response_reliability).real("au_threshold", a.thresholds.au_threshold)
                 .real("eu_threshold", a.thresholds.eu_threshold).raw("census", census_json(a.quadrant_census))
                 .raw("quadrants", quads).done();
    }
    out.flush();
    records.clear();
  }
};

int cmd_analyze(const std::string& input, const RunConfig& cfg, std::istream& in, std::ostream& out,
                std::ostream& err) {
  std::unique_ptr<std::ifstream> file;
  std::istream* src = &in;
  if (input != "-") {
    file = std::make_unique<std::ifstream>(input, std::ios::binary);
    if (!*file) throw Error(ErrorCode::kIo, "cannot open " + input);
    src = file.get();
  }
  StreamReader reader(*src);
  AnalyzeState state{cfg, out, {}, 0, {}, false, false};
  int status = kExitOk;
  while (auto ev = reader.next()) {
    if (auto* h = std::get_if<StreamEvent::Header>(&ev->value)) {
      state.finish();
      StreamHeader& header = h->header;
      ResponseDocument probe{header, {}, std::nullopt};
      state.response_id = document_id(probe, state.doc_index++);
      state.open = true;
    } else if (auto* r = std::get_if<StreamEvent::Record>(&ev->value)) {
      try {
        const auto ev_ = build_evidence(r->record, cfg.assess.k_evidence, cfg.assess.clamp_floor);
        auto u = assess(ev_);
        if (cfg.assess.quadrant_mode == ThresholdMode::kAbsolute) {
          u.quadrant = classify_quadrant(u, {cfg.assess.au_threshold, cfg.assess.eu_threshold,
                                             ThresholdMode::kAbsolute});
        }
        state.token_row(r->record, u, ev_.clamped_count);
        state.records.push_back(std::move(r->record));
      } catch (const Error& e) {
        err << "line " << ev->line << ": " << e.what() << '\n';
        status = std::max(status, exit_for(e));
      }
    } else if (std::holds_alternative<StreamEvent::Label>(ev->value)) {
      continue;
    } else if (auto* f = std::get_if<StreamEvent::Failure>(&ev->value)) {
      err << f->error.what() << '\n';
      status = kExitParse;
    } else {
      const auto& t = std::get<StreamEvent::Truncated>(ev->value);
      err << "line " << t.line << ": input ends inside a line (" << t.fragment.size() << " bytes dropped)\n";
      status = kExitParse;
    }
  }
  state.finish();
  return status;
}

// ---- heatmap ---------------------------------------------------------------

int cmd_heatmap(const std::string& input, const std::string& output, const std::string& response,
                bool terminal, bool plain, bool quadrants, const RunConfig& cfg, std::istream& in,
                std::ostream& out) {
  const auto docs = parse_documents(read_file(input, in));
  if (docs.empty()) throw Error(ErrorCode::kPrecondition, "input holds no document");
  std::size_t pick = 0;
  if (!response.empty()) {
    pick = docs.size();
    for (std::size_t i = 0; i < docs.size(); ++i) {
      if (document_id(docs[i], i) == response) pick = i;
    }
    if (pick == docs.size()) throw Error(ErrorCode::kPrecondition, "no response with id " + response);
  }
  const auto& doc = docs[pick];
  HeatmapSpec spec;
  if (!doc.records.empty()) spec = make_heatmap(assess_response(doc.records, cfg.assess), quadrants);
  spec.include_quadrants = quadrants;
  spec.title = document_id(doc, pick);
  if (terminal || plain) out << render_terminal(spec, plain ? TerminalStyle::kPlain : TerminalStyle::kAnsi);
  if (!output.empty()) write_file(output, render_html(spec), out);
  return kExitOk;
}

// ---- eval ------------------------------------------------------------------

int cmd_eval(const std::vector<std::string>& inputs, const std::string& labels_path,
             const std::string& external_path, const std::vector<std::string>& indicators,
             const std::string& grid, const RunConfig& cfg, std::istream& in, std::ostream& out) {
  std::vector<ResponseDocument> docs;
  for (const auto& path : inputs) {
    auto more = parse_documents(read_file(path, in));
    for (auto& d : more) docs.push_back(std::move(d));
  }
  std::vector<LabelEntry> labels;
  if (!labels_path.empty()) labels = parse_labels(read_file(labels_path, in));
  std::vector<ExternalScore> external;
  if (!external_path.empty()) external = parse_external_scores(read_file(external_path, in));

  EvalConfig ec;
  ec.assess = cfg.assess;
  if (!indicators.empty()) ec.indicators = indicators;
  ec.threshold_grid = parse_grid(grid);
  const auto table = compare_indicators(docs, labels, external, ec);

  if (cfg.format == OutputFormat::kTable) {
    out << fmt::format("{:<14} {:>8} {:>12} {:>14}\n", "indicator", "AUROC", "best score", "best threshold");
    for (const auto& r : table.rows) {
      out << fmt::format("{:<14} {:>8.4f} {:>12} {:>14}\n", r.indicator + (r.external ? "*" : ""), r.auroc,
                         r.best_expand_score ? std::to_string(*r.best_expand_score) : "-",
                         r.best_threshold ? fmt::format("{:.6g}", *r.best_threshold) : "-");
    }
    if (table.external_average) out << fmt::format("{:<14} {:>8.4f}\n", "Average*", *table.external_average);
    out << fmt::format("{} responses", table.responses);
    if (table.max_expand_score) out << fmt::format("; max achievable expand score {}", *table.max_expand_score);
    out << '\n';
    return kExitOk;
  }
  for (const auto& r : table.rows) {
    Line line;
    line.str("type", "indicator").str("indicator", r.indicator).real("auroc", r.auroc).boolean("external", r.external);
    if (r.best_expand_score) line.integer("best_expand_score", *r.best_expand_score);
    if (r.best_threshold) line.real("best_threshold", *r.best_threshold);
    out << line.done();
  }
  Line summary;
  summary.str("type", "summary").integer("responses", static_cast<long long>(table.responses));
  if (table.external_average) summary.real("external_average", *table.external_average);
  if (table.max_expand_score) summary.integer("max_expand_score", *table.max_expand_score);
  out << summary.done();
  return kExitOk;
}

// ---- simulate --------------------------------------------------------------

int cmd_simulate(const std::string& input, const std::vector<std::string>& indicator_names,
                 const std::string& grid_text, bool sample, const RunConfig& cfg, std::istream& in,
                 std::ostream& out) {
  const auto docs = parse_documents(read_file(input, in));
  if (docs.empty()) throw Error(ErrorCode::kDataset, "dataset holds no questions");
  std::vector<Indicator> kinds;
  if (indicator_names.empty()) {
    kinds = {Indicator::kGreedyNever, Indicator::kTop2Always, Indicator::kMaxProb, Indicator::kEntropy,
             Indicator::kLogTokUEu};
  } else {
    for (const auto& n : indicator_names) kinds.push_back(parse_indicator(n));
  }
  const auto fixed_grid = parse_grid(grid_text);

  // The first answer is greedy unless sampling is requested, in which case
  // it is drawn at the EU-modulated temperature of the critical position.
  std::vector<std::pair<ClassId, ClassId>> answers;
  Sampler sampler(cfg.seed);
  for (std::size_t i = 0; i < docs.size(); ++i) {
    auto base = expand_item(docs[i], Indicator::kLogTokUEu, cfg.assess);
    if (sample) {
      const LogitsRecord* critical = &docs[i].records.front();
      for (const auto& r : docs[i].records) {
        if (r.is_critical.value_or(false)) {
          critical = &r;
          break;
        }
      }
      const int k = std::min<int>(cfg.assess.k_evidence, static_cast<int>(critical->topk.size()));
      std::vector<double> logits;
      for (int j = 0; j < k; ++j) logits.push_back(critical->topk[j].logit);
      const double t = effective_temperature(base.indicator_value, cfg.policy);
      const std::size_t first = sampler.sample(logits, t);
      base.top1 = critical->topk[first].token_id;
      base.top2 = critical->topk[first == 0 ? 1 : 0].token_id;
    }
    answers.emplace_back(base.top1, base.top2);
  }

  for (Indicator kind : kinds) {
    std::vector<ExpandItem> items;
    for (std::size_t i = 0; i < docs.size(); ++i) {
      auto item = expand_item(docs[i], kind, cfg.assess);
      item.top1 = answers[i].first;
      item.top2 = answers[i].second;
      items.push_back(std::move(item));
    }
    const auto grid = fixed_grid.empty() ? exhaustive_grid(items) : fixed_grid;
    const auto sweep = sweep_thresholds(items, kind, grid);
    const int best_possible = max_achievable_score(items);
    std::vector<ReliabilityDelta> deltas;
    for (const auto& item : items) {
      deltas.push_back({indicator_confidence(item.indicator_value, kind),
                        expand_item_score(item, kind, sweep.best_threshold)});
    }
    const auto curve = accumulated_score_curve(deltas);
    const double fraction = best_possible != 0 ? static_cast<double>(sweep.best_score) / best_possible : 0.0;
    if (cfg.format == OutputFormat::kTable) {
      out << fmt::format("{:<12} score {:>6} of {:>6} ({:>7.4f})  threshold {:.6g}\n", indicator_name(kind),
                         sweep.best_score, best_possible, fraction, sweep.best_threshold);
      continue;
    }
    std::string points = "[";
    for (std::size_t i = 0; i < curve.size(); ++i) {
      points += (i ? "," : "") + std::to_string(curve[i].cumulative_score);
    }
    points += "]";
    out << Line().str("type", "indicator").str("indicator", std::string(indicator_name(kind)))
               .real("best_threshold", sweep.best_threshold).integer("score", sweep.best_score)
               .integer("max_achievable", best_possible).real("fraction", fraction)
               .integer("questions", static_cast<long long>(items.size())).raw("curve", points).done();
  }
  return kExitOk;
}

// ---- verify / bench --------------------------------------------------------

int cmd_verify(std::vector<std::string> suites, const RunConfig& cfg, std::ostream& out) {
  if (suites.empty() || std::find(suites.begin(), suites.end(), "all") != suites.end()) suites = suite_names();
  for (const auto& s : suites) {
    if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end()) {
      throw Error(ErrorCode::kUnknownSuite, "unknown suite \"" + s + "\"");
    }
  }
  bool all = true;
  for (const auto& s : suites) {
    const auto r = run_suite(s, cfg.seed);
    all = all && r.passed;
    if (cfg.format == OutputFormat::kTable) {
      out << fmt::format("{:<14} {:<4} {:>6} cases  {}\n", r.suite, r.passed ? "PASS" : "FAIL", r.cases, r.detail);
    } else {
      out << Line().str("suite", r.suite).boolean("passed", r.passed).integer("cases", static_cast<long long>(r.cases))
                 .raw("detail", "{" + r.detail + "}").done();
    }
  }
  return all ? kExitOk : kExitVerification;
}

int cmd_bench(const BenchOptions& options, const RunConfig& cfg, std::ostream& out) {
  const auto r = run_bench(options);
  if (cfg.format == OutputFormat::kTable) {
    out << fmt::format("tokens {} at k={}\n", r.tokens, r.k);
    out << fmt::format("single thread   {:>14.0f} tokens/s\n", r.single_thread_rate);
    out << fmt::format("{:>2} threads      {:>14.0f} tokens/s\n", r.threads, r.multi_thread_rate);
    out << fmt::format("identical results across thread counts: {}\n", r.identical_across_threads ? "yes" : "no");
    out << fmt::format("max RSS {} KiB\n", r.max_rss_kib);
    if (r.stream_records) {
      out << fmt::format("streamed {} records at {:.0f} records/s, RSS growth {} KiB\n", r.stream_records,
                         r.stream_rate, r.stream_rss_growth_kib);
    }
    return kExitOk;
  }
  Line line;
  line.str("type", "bench").integer("tokens", static_cast<long long>(r.tokens)).integer("k", r.k)
      .integer("threads", r.threads).real("single_thread_rate", r.single_thread_rate)
      .real("multi_thread_rate", r.multi_thread_rate).real("per_core_rate", r.per_core_rate)
      .boolean("identical_across_threads", r.identical_across_threads).real("checksum", r.checksum)
      .integer("max_rss_kib", r.max_rss_kib);
  if (r.stream_records) {
    line.integer("stream_records", static_cast<long long>(r.stream_records)).real("stream_rate", r.stream_rate)
        .integer("stream_rss_growth_kib", r.stream_rss_growth_kib);
  }
  out << line.done();
  return kExitOk;
}

void add_assess_flags(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--k-evidence", cfg.assess.k_evidence, "Top-k logits used as Dirichlet evidence")
      ->check(CLI::PositiveNumber);
  sub->add_option("--k-tokens", cfg.assess.k_tokens, "Least reliable tokens averaged per response")
      ->check(CLI::PositiveNumber);
  sub->add_option("--clamp-floor", cfg.assess.clamp_floor, "Floor for non-positive logits")
      ->check(CLI::PositiveNumber);
}

void add_format_flag(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--format", cfg.format, "Output format")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, OutputFormat>{{"records", OutputFormat::kRecords}, {"table", OutputFormat::kTable}}));
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Logits-based token uncertainty: analysis, heatmaps, evaluation and theory checks", "logtoku"};
  app.require_subcommand(1);
  RunConfig cfg;

  std::string input = "-";
  std::vector<std::string> inputs;
  std::string output;
  std::string labels, external, grid, response, quadrant_mode = "mean";
  std::vector<std::string> indicators, suites;
  bool terminal = false, plain = false, quadrants = false, sample = false;
  BenchOptions bench;

  auto* analyze = app.add_subcommand("analyze", "Per-token AU/EU/reliability and response reliability");
  analyze->add_option("--input", input, "logtoku/1 file, or - for standard input");
  add_assess_flags(analyze, cfg);
  analyze->add_option("--quadrant-mode", quadrant_mode, "mean (per-response means) or absolute")
      ->check(CLI::IsMember({"mean", "absolute"}));
  analyze->add_option("--au-threshold", cfg.assess.au_threshold, "AU cutoff in absolute mode");
  analyze->add_option("--eu-threshold", cfg.assess.eu_threshold, "EU cutoff in absolute mode");
  add_format_flag(analyze, cfg);

  auto* heatmap = app.add_subcommand("heatmap", "Word-level uncertainty heatmap");
  heatmap->add_option("--input", input, "logtoku/1 file, or - for standard input");
  heatmap->add_option("--output", output, "HTML output path, or - for standard output");
  heatmap->add_option("--response", response, "Response id to render (default: first document)");
  heatmap->add_flag("--terminal", terminal, "Render styled text to standard output");
  heatmap->add_flag("--plain", plain, "Render unstyled text with bracketed scores");
  heatmap->add_flag("--quadrants", quadrants, "Mark each word with its quadrant");
  add_assess_flags(heatmap, cfg);

  auto* eval = app.add_subcommand("eval", "AUROC comparison of reliability indicators");
  eval->add_option("--input", inputs, "logtoku/1 files")->required();
  eval->add_option("--labels", labels, "Line-delimited {response_id, label} file");
  eval->add_option("--external-scores", external, "Line-delimited {response_id, indicator, score} file");
  eval->add_option("--indicator", indicators, "LogTokU, LogTokU_EU, MaxProb, Entropy");
  eval->add_option("--threshold-grid", grid, "start:stop:step or comma list for expand-game sweeps");
  add_assess_flags(eval, cfg);
  add_format_flag(eval, cfg);

  auto* simulate = app.add_subcommand("simulate", "Multi-label expand game with threshold sweeps");
  simulate->add_option("--input", input, "Dataset of logtoku/1 documents with meta \"gold\"")->required();
  simulate->add_option("--indicator", indicators, "GreedyNever, Top2Always, MaxProb, Entropy, LogTokU_EU");
  simulate->add_option("--threshold-grid,--threshold", grid, "start:stop:step or comma list");
  simulate->add_option("--seed", cfg.seed, "Sampler seed");
  simulate->add_flag("--sample", sample, "Sample the first answer at the EU-modulated temperature");
  simulate->add_option("--t-base", cfg.policy.t_base, "Temperature at zero EU");
  simulate->add_option("--t-min", cfg.policy.t_min, "Lowest temperature");
  simulate->add_option("--lambda", cfg.policy.lambda, "Decay rate of temperature in EU");
  add_assess_flags(simulate, cfg);
  add_format_flag(simulate, cfg);

  auto* verify = app.add_subcommand("verify", "Numerical checks of the supporting theory");
  verify->add_option("--suite", suites, "eq6, theorem1, competitor, sharing, competition, normalization, all");
  verify->add_option("--seed", cfg.seed, "Seed for random cases");
  add_format_flag(verify, cfg);

  auto* benchcmd = app.add_subcommand("bench", "Throughput of the uncertainty kernel");
  benchcmd->add_option("--tokens", bench.tokens, "Synthetic tokens")->check(CLI::PositiveNumber);
  benchcmd->add_option("--k-evidence", bench.k, "Evidence width")->check(CLI::Range(1, 64));
  benchcmd->add_option("--threads", bench.threads, "Worker threads (0 = all cores)");
  benchcmd->add_option("--stream-records", bench.stream_records, "Also stream this many records through the reader");
  benchcmd->add_option("--seed", bench.seed, "Seed for synthetic logits");
  add_format_flag(benchcmd, cfg);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  cfg.assess.quadrant_mode = quadrant_mode == "absolute" ? ThresholdMode::kAbsolute : ThresholdMode::kResponseMean;

  try {
    if (analyze->parsed()) return cmd_analyze(input, cfg, in, out, err);
    if (heatmap->parsed()) {
      if (!terminal && !plain && output.empty()) terminal = true;
      return cmd_heatmap(input, output, response, terminal, plain, quadrants, cfg, in, out);
    }
    if (eval->parsed()) return cmd_eval(inputs, labels, external, indicators, grid, cfg, in, out);
    if (simulate->parsed()) return cmd_simulate(input, indicators, grid, sample, cfg, in, out);
    if (verify->parsed()) return cmd_verify(suites, cfg, out);
    if (benchcmd->parsed()) return cmd_bench(bench, cfg, out);
  } catch (const Error& e) {
    err << "error (" << error_code_name(e.code()) << "): " << e.what() << '\n';
    return exit_for(e);
  }
  return kExitUsage;
}

}  // namespace logtoku::cli
