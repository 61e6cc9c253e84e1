#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "logtoku/aggregation.h"
#include "logtoku/decoding.h"

namespace logtoku::cli {

// Process exit classes.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitParse = 3,
  kExitPrecondition = 4,
  kExitVerification = 5,
  kExitIo = 6,
};

enum class OutputFormat { kRecords, kTable };

struct RunConfig {
  AssessOptions assess;
  TemperaturePolicy policy;
  std::uint64_t seed = 7;
  OutputFormat format = OutputFormat::kRecords;
};

// Entry point shared by the executable and the tests. args excludes argv[0].
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

struct BenchOptions {
  std::size_t tokens = 1'000'000;
  int k = 10;
  unsigned threads = 0;  // 0 = hardware concurrency
  std::uint64_t seed = 7;
  std::size_t stream_records = 0;  // 0 skips the streaming measurement
};

struct BenchReport {
  std::size_t tokens = 0;
  int k = 0;
  unsigned threads = 1;
  double single_thread_rate = 0.0;  // tokens / s
  double multi_thread_rate = 0.0;
  double per_core_rate = 0.0;  // the single-thread rate
  bool identical_across_threads = false;
  double checksum = 0.0;  // sum of reliabilities in index order
  long max_rss_kib = 0;
  std::size_t stream_records = 0;
  double stream_rate = 0.0;
  long stream_rss_growth_kib = 0;
};

BenchReport run_bench(const BenchOptions& options);

struct SuiteResult {
  std::string suite;
  bool passed = false;
  std::size_t cases = 0;
  std::string detail;  // JSON object body with suite-specific figures
};

// Suite names: eq6, theorem1, competitor, sharing, competition, normalization.
const std::vector<std::string>& suite_names();
// Throws Error(kUnknownSuite).
SuiteResult run_suite(const std::string& name, std::uint64_t seed);

}  // namespace logtoku::cli
