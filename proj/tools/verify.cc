#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <string>

#include <fmt/format.h>

#include "commands.h"
#include "logtoku/error.h"
#include "logtoku/evidence.h"
#include "logtoku/theory.h"
#include "logtoku/wire.h"

namespace logtoku::cli {

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

std::size_t below(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

SuiteResult eq6(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto start = std::chrono::steady_clock::now();
  double worst = theory::ce_decomposition_residual(std::vector<double>{0.0, 0.0}, 0);
  worst = std::max(worst, theory::ce_decomposition_residual(std::vector<double>{3.2, -0.5, 1.1}, 2));
  double worst_scaled = 0.0;
  const std::size_t cases = 1000;
  for (std::size_t c = 0; c < cases; ++c) {
    std::vector<double> z(2 + below(rng, 4999));
    for (double& v : z) v = uniform(rng, -0.99, 20.0);
    const auto d = theory::decompose_cross_entropy(z, below(rng, z.size()));
    worst = std::max(worst, d.residual);
    worst_scaled = std::max(worst_scaled, d.residual / std::max(1.0, std::abs(d.cross_entropy)));
  }
  SuiteResult r{"eq6", worst < 1e-8 && worst_scaled <= 1e-9, cases + 2, {}};
  r.detail = fmt::format("\"max_residual\":{},\"max_scaled_residual\":{},\"seconds\":{:.3f}",
                         format_real(worst), format_real(worst_scaled), seconds_since(start));
  return r;
}

SuiteResult theorem1(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto start = std::chrono::steady_clock::now();
  double min_delta = INFINITY;
  double worst_full = 0.0;
  const std::size_t cases = 10000;
  for (std::size_t c = 0; c < cases; ++c) {
    std::vector<double> z(2 + below(rng, 199));
    for (double& v : z) v = uniform(rng, -10.0, 10.0);
    theory::GradientStepConfig cfg;
    cfg.learning_rate = uniform(rng, 1e-3, 2.0);
    cfg.correct_index = below(rng, z.size());
    cfg.top_set.insert(cfg.correct_index);
    const std::size_t extra = below(rng, z.size());
    for (std::size_t i = 0; i < extra; ++i) cfg.top_set.insert(below(rng, z.size()));
    min_delta = std::min(min_delta, theory::gradient_step_evidence_delta(z, cfg));

    for (std::size_t i = 0; i < z.size(); ++i) cfg.top_set.insert(i);
    worst_full = std::max(worst_full, std::abs(theory::gradient_step_evidence_delta(z, cfg)));
  }
  SuiteResult r{"theorem1", min_delta >= -1e-12 && worst_full <= 1e-12, 2 * cases, {}};
  r.detail = fmt::format("\"min_delta\":{},\"max_full_set_delta\":{},\"seconds\":{:.3f}",
                         format_real(min_delta), format_real(worst_full), seconds_since(start));
  return r;
}

SuiteResult competitor(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  bool signs = true;
  const std::size_t cases = 1000;
  for (std::size_t c = 0; c < cases; ++c) {
    std::vector<double> z(3 + below(rng, 48));
    for (double& v : z) v = uniform(rng, -8.0, 8.0);
    const std::size_t a = below(rng, z.size());
    std::size_t b = below(rng, z.size() - 1);
    if (b >= a) ++b;
    const auto g = theory::competitor_gradient_terms(z, a, b);
    worst = std::max(worst, g.max_residual);
    signs = signs && g.cross_nonpositive && g.descent_a_on_b < 0.0 && g.descent_b_on_b > 0.0;
  }
  SuiteResult r{"competitor", worst <= 1e-10 && signs, cases, {}};
  r.detail = fmt::format("\"max_residual\":{},\"cross_terms_nonpositive\":{}", format_real(worst),
                         signs ? "true" : "false");
  return r;
}

SuiteResult sharing(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  bool ok = true;
  double worst_total = 0.0;
  const std::size_t cases = 1000;
  for (std::size_t c = 0; c < cases; ++c) {
    std::vector<double> z(3 + below(rng, 100));
    for (double& v : z) v = uniform(rng, -10.0, 10.0);
    std::set<std::size_t> correct;
    const std::size_t count = 1 + below(rng, z.size() - 1);
    while (correct.size() < count) correct.insert(below(rng, z.size()));
    const auto s = theory::probability_sharing_check(z, correct);
    worst_total = std::max(worst_total, std::abs(s.total_probability - 1.0));
    ok = ok && s.total_is_one && s.share_below_one;
  }
  const auto pair = theory::probability_sharing_check(std::vector<double>{5.0, 5.0, 0.0}, {0, 1});
  ok = ok && pair.max_single_correct < 0.5;
  SuiteResult r{"sharing", ok, cases + 1, {}};
  r.detail = fmt::format("\"max_total_error\":{},\"two_answer_max_single\":{}", format_real(worst_total),
                         format_real(pair.max_single_correct));
  return r;
}

SuiteResult competition(std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  theory::CompetitionConfig cfg;
  cfg.seed = seed;
  const auto rep = theory::competition_simulation(cfg);
  const double prob_gap = std::abs(rep.max_prob_small - rep.max_prob_large);
  const double evidence_gap = rep.total_evidence_large - rep.total_evidence_small;
  const bool ok = prob_gap < 0.1 && evidence_gap > 1.0 && rep.eu_large < rep.eu_small &&
                  rep.monotonicity_violations == 0;
  SuiteResult r{"competition", ok, 1, {}};
  r.detail = fmt::format(
      "\"max_prob_small\":{},\"max_prob_large\":{},\"total_evidence_small\":{},"
      "\"total_evidence_large\":{},\"eu_small\":{},\"eu_large\":{},\"monotonicity_violations\":{},"
      "\"seconds\":{:.3f}",
      format_real(rep.max_prob_small), format_real(rep.max_prob_large),
      format_real(rep.total_evidence_small), format_real(rep.total_evidence_large),
      format_real(rep.eu_small), format_real(rep.eu_large), rep.monotonicity_violations,
      seconds_since(start));
  return r;
}

// Shifting every logit leaves softmax unchanged while the total evidence
// grows tenfold; only EU sees the difference.
SuiteResult normalization(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst_baseline = 0.0;
  bool eu_drops = true;
  const std::size_t cases = 10000;
  for (std::size_t c = 0; c < cases; ++c) {
    const int k = 2 + static_cast<int>(below(rng, 19));
    std::vector<double> alpha(k);
    for (double& a : alpha) a = uniform(rng, 0.1, 30.0);
    std::sort(alpha.begin(), alpha.end(), std::greater<>());
    double total = 0.0;
    for (double a : alpha) total += a;
    const double shift = 9.0 * total / k;
    std::vector<double> strong(alpha);
    for (double& a : strong) a += shift;

    LogitsRecord weak_rec, strong_rec;
    for (int i = 0; i < k; ++i) {
      weak_rec.topk.push_back({i, "", alpha[i]});
      strong_rec.topk.push_back({i, "", strong[i]});
    }
    weak_rec.chosen_id = strong_rec.chosen_id = static_cast<std::int64_t>(below(rng, k));
    worst_baseline = std::max(worst_baseline, std::abs(baseline_maxprob(weak_rec, k).log_prob -
                                                       baseline_maxprob(strong_rec, k).log_prob));
    worst_baseline = std::max(worst_baseline,
                              std::abs(baseline_entropy(weak_rec, k) - baseline_entropy(strong_rec, k)));
    const double eu_weak = epistemic(build_evidence(alpha, k));
    const double eu_strong = epistemic(build_evidence(strong, k));
    eu_drops = eu_drops && eu_strong < eu_weak;
  }
  SuiteResult r{"normalization", worst_baseline <= 1e-9 && eu_drops, cases, {}};
  r.detail = fmt::format("\"max_baseline_difference\":{},\"eu_strictly_lower\":{}",
                         format_real(worst_baseline), eu_drops ? "true" : "false");
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"eq6",     "theorem1",    "competitor",
                                              "sharing", "competition", "normalization"};
  return names;
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed) {
  if (name == "eq6") return eq6(seed);
  if (name == "theorem1") return theorem1(seed);
  if (name == "competitor") return competitor(seed);
  if (name == "sharing") return sharing(seed);
  if (name == "competition") return competition(seed);
  if (name == "normalization") return normalization(seed);
  throw Error(ErrorCode::kUnknownSuite, "unknown suite \"" + name + "\"");
}

}  // namespace logtoku::cli
