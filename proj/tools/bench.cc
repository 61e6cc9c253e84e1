#include <sys/resource.h>

#include <algorithm>
#include <chrono>
#include <functional>
#include <istream>
#include <random>
#include <streambuf>
#include <thread>

#include "commands.h"
#include "logtoku/evidence.h"
#include "logtoku/wire.h"

namespace logtoku::cli {

namespace {

long max_rss_kib() {
  rusage usage{};
  getrusage(RUSAGE_SELF, &usage);
  return usage.ru_maxrss;
}

// Produces a logtoku/1 document line by line without ever holding more than
// one record, so reading it measures the reader's own footprint.
class SyntheticStreamBuf : public std::streambuf {
 public:
  SyntheticStreamBuf(std::size_t records, int k, std::uint64_t seed) : records_(records), k_(k), rng_(seed) {
    StreamHeader header;
    header.k_stored = k;
    header.model_name = "bench";
    line_ = write_header_line(header);
    set_line();
  }

 protected:
  int_type underflow() override {
    if (gptr() < egptr()) return traits_type::to_int_type(*gptr());
    if (emitted_ >= records_) return traits_type::eof();
    LogitsRecord r;
    r.step = static_cast<std::int64_t>(emitted_);
    std::vector<double> z(k_);
    for (double& v : z) v = static_cast<double>(rng_() >> 11) * 0x1.0p-53 * 30.0 - 5.0;
    std::sort(z.begin(), z.end(), std::greater<>());
    for (int i = 0; i < k_; ++i) r.topk.push_back({i, "", z[i]});
    r.chosen_id = 0;
    line_ = write_record_line(r);
    ++emitted_;
    set_line();
    return traits_type::to_int_type(*gptr());
  }

 private:
  void set_line() { setg(line_.data(), line_.data(), line_.data() + line_.size()); }

  std::size_t records_;
  int k_;
  std::mt19937_64 rng_;
  std::string line_;
  std::size_t emitted_ = 0;
};

void assess_range(const std::vector<double>& logits, int k, std::size_t begin, std::size_t end,
                  std::vector<TokenUncertainty>& out) {
  for (std::size_t t = begin; t < end; ++t) {
    out[t] = assess_logits(std::span<const double>(logits.data() + t * k, k), k);
  }
}

}  // namespace

BenchReport run_bench(const BenchOptions& options) {
  BenchReport rep;
  rep.tokens = options.tokens;
  rep.k = options.k;
  rep.threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());

  if (options.stream_records > 0) {
    const long before = max_rss_kib();
    SyntheticStreamBuf buf(options.stream_records, options.k, options.seed);
    std::istream in(&buf);
    StreamReader reader(in);
    const auto start = std::chrono::steady_clock::now();
    std::size_t seen = 0;
    double sink = 0.0;
    while (auto ev = reader.next()) {
      if (auto* r = std::get_if<StreamEvent::Record>(&ev->value)) {
        sink += assess(r->record, options.k).reliability;
        ++seen;
      }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rep.stream_records = seen;
    rep.stream_rate = secs > 0 ? static_cast<double>(seen) / secs : 0.0;
    rep.stream_rss_growth_kib = max_rss_kib() - before;
    (void)sink;
  }

  std::mt19937_64 rng(options.seed);
  std::vector<double> logits(options.tokens * options.k);
  for (std::size_t t = 0; t < options.tokens; ++t) {
    double* row = logits.data() + t * options.k;
    for (int i = 0; i < options.k; ++i) row[i] = static_cast<double>(rng() >> 11) * 0x1.0p-53 * 30.0 - 5.0;
    std::sort(row, row + options.k, std::greater<>());
  }

  std::vector<TokenUncertainty> single(options.tokens), multi(options.tokens);
  auto start = std::chrono::steady_clock::now();
  assess_range(logits, options.k, 0, options.tokens, single);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  rep.single_thread_rate = secs > 0 ? static_cast<double>(options.tokens) / secs : 0.0;

  start = std::chrono::steady_clock::now();
  std::vector<std::thread> pool;
  const std::size_t chunk = (options.tokens + rep.threads - 1) / rep.threads;
  for (unsigned w = 0; w < rep.threads; ++w) {
    const std::size_t begin = std::min(options.tokens, w * chunk);
    const std::size_t end = std::min(options.tokens, begin + chunk);
    pool.emplace_back(assess_range, std::cref(logits), options.k, begin, end, std::ref(multi));
  }
  for (auto& th : pool) th.join();
  secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  rep.multi_thread_rate = secs > 0 ? static_cast<double>(options.tokens) / secs : 0.0;
  rep.per_core_rate = rep.single_thread_rate;

  rep.identical_across_threads = true;
  for (std::size_t t = 0; t < options.tokens; ++t) {
    const auto& a = single[t];
    const auto& b = multi[t];
    if (a.au != b.au || a.eu != b.eu || a.reliability != b.reliability) {
      rep.identical_across_threads = false;
      break;
    }
    rep.checksum += a.reliability;
  }
  rep.max_rss_kib = max_rss_kib();
  return rep;
}

}  // namespace logtoku::cli
