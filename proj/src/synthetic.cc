#include "logtoku/synthetic.h"

#include <algorithm>
#include <numeric>
#include <string>

namespace logtoku::synthetic {

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

std::size_t pick(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

// Sorts logits descending and attaches distinct ids drawn from a vocabulary.
std::vector<TopkEntry> make_topk(std::mt19937_64& rng, std::vector<double> logits,
                                 std::int64_t id_base = 1000) {
  std::sort(logits.begin(), logits.end(), std::greater<>());
  std::vector<TopkEntry> out;
  std::int64_t id = id_base + static_cast<std::int64_t>(pick(rng, 50));
  for (double z : logits) {
    out.push_back({id, "t" + std::to_string(id), z});
    id += 1 + static_cast<std::int64_t>(pick(rng, 7));
  }
  // Equal logits must be ordered by ascending id; ids already ascend.
  return out;
}

LogitsRecord make_record(std::int64_t step, std::vector<TopkEntry> topk) {
  LogitsRecord r;
  r.step = step;
  r.chosen_id = topk.front().token_id;
  r.chosen_text = " " + topk.front().text;
  r.topk = std::move(topk);
  r.word_group = step;
  return r;
}

const char* const kTexts[] = {"", " the", "pos", "itive", ",", "\"q\"", "back\\slash", "tab\there",
                              "line\nbreak", "été", "日本", "\x01", " Barack"};

std::string random_text(std::mt19937_64& rng) {
  return kTexts[pick(rng, std::size(kTexts))];
}

double random_logit(std::mt19937_64& rng) {
  switch (pick(rng, 6)) {
    case 0: return static_cast<double>(static_cast<int>(pick(rng, 40)) - 10);  // integral values
    case 1: return uniform(rng, -1e-6, 1e-6);
    case 2: return uniform(rng, -50.0, 50.0) * 1e5;
    case 3: return -0.0;
    default: return uniform(rng, -10.0, 40.0);
  }
}

}  // namespace

LogitsRecord random_record(std::mt19937_64& rng, std::int64_t step, int k_stored, double center,
                           double spread) {
  std::vector<double> logits(k_stored);
  for (double& z : logits) z = center + uniform(rng, -spread, spread);
  return make_record(step, make_topk(rng, std::move(logits)));
}

ResponseDocument random_document(std::mt19937_64& rng, int max_records) {
  ResponseDocument doc;
  doc.header.k_stored = 1 + static_cast<std::int64_t>(pick(rng, 40));
  doc.header.model_name = random_text(rng) + "model";
  doc.header.prompt = random_text(rng) + random_text(rng);
  const std::size_t meta = pick(rng, 3);
  for (std::size_t i = 0; i < meta; ++i) doc.header.meta["key" + random_text(rng)] = random_text(rng);

  const std::size_t n = pick(rng, static_cast<std::size_t>(max_records) + 1);
  std::int64_t group = 0;
  for (std::size_t s = 0; s < n; ++s) {
    const std::size_t width = 1 + pick(rng, 6);
    std::vector<TopkEntry> topk;
    for (std::size_t i = 0; i < width; ++i) {
      topk.push_back({static_cast<std::int64_t>(pick(rng, 64)) - 8, random_text(rng), random_logit(rng)});
    }
    if (width > 1 && pick(rng, 4) == 0) topk[1].logit = topk[0].logit;  // exercise ties
    std::sort(topk.begin(), topk.end(), [](const TopkEntry& a, const TopkEntry& b) {
      return a.logit > b.logit || (a.logit == b.logit && a.token_id < b.token_id);
    });
    // Distinct ids keep the id tie-break strict.
    for (std::size_t i = 1; i < topk.size(); ++i) {
      if (topk[i].logit == topk[i - 1].logit && topk[i].token_id <= topk[i - 1].token_id) {
        topk[i].token_id = topk[i - 1].token_id + 1;
      }
    }
    LogitsRecord r;
    r.step = static_cast<std::int64_t>(s);
    r.topk = std::move(topk);
    r.chosen_id = pick(rng, 5) == 0 ? 9999 : r.topk[pick(rng, r.topk.size())].token_id;
    r.chosen_text = random_text(rng);
    if (pick(rng, 4) != 0) {
      if (pick(rng, 2) == 0) ++group;
      r.word_group = group;
    }
    if (pick(rng, 3) == 0) r.is_critical = pick(rng, 2) == 0;
    doc.records.push_back(std::move(r));
  }
  if (pick(rng, 2) == 0) doc.label = pick(rng, 2) == 0;
  return doc;
}

namespace {

// One dominant logit over a low floor: low AU, low EU.
std::vector<double> certain_logits(std::mt19937_64& rng, int k) {
  std::vector<double> z(k);
  z[0] = uniform(rng, 18.0, 30.0);
  for (int i = 1; i < k; ++i) z[i] = uniform(rng, 0.0, 6.0);
  return z;
}

// Every candidate weak and comparable: high AU, high EU.
std::vector<double> unknown_logits(std::mt19937_64& rng, int k) {
  std::vector<double> z(k);
  for (double& v : z) v = uniform(rng, 0.2, 3.0);
  return z;
}

// One moderate candidate over weak ones: low AU, high EU.
std::vector<double> guess_logits(std::mt19937_64& rng, int k) {
  std::vector<double> z(k);
  z[0] = uniform(rng, 6.0, 9.0);
  for (int i = 1; i < k; ++i) z[i] = uniform(rng, 0.0, 2.0);
  return z;
}

// Several strong comparable candidates: high AU, low EU.
std::vector<double> multi_answer_logits(std::mt19937_64& rng, int k) {
  std::vector<double> z(k);
  const std::size_t strong = 2 + pick(rng, 3);
  for (int i = 0; i < k; ++i) {
    z[i] = static_cast<std::size_t>(i) < strong ? uniform(rng, 19.0, 23.0) : uniform(rng, 8.0, 12.0);
  }
  return z;
}

}  // namespace

std::vector<ResponseDocument> adversarial_family(std::size_t n, std::uint64_t seed, int k_stored) {
  std::mt19937_64 rng(seed);
  std::vector<ResponseDocument> docs;
  docs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    ResponseDocument doc;
    doc.header.k_stored = k_stored;
    doc.header.model_name = "synthetic";
    doc.header.prompt = "adversarial question " + std::to_string(i);
    doc.header.meta["response_id"] = "adv-" + std::to_string(i);

    const bool correct = pick(rng, 2) == 0;
    const std::size_t length = 4 + pick(rng, 6);
    const std::size_t critical = pick(rng, length);
    for (std::size_t s = 0; s < length; ++s) {
      std::vector<double> z;
      if (s != critical) {
        z = certain_logits(rng, k_stored);
      } else if (correct) {
        z = pick(rng, 2) == 0 ? certain_logits(rng, k_stored) : multi_answer_logits(rng, k_stored);
      } else {
        z = pick(rng, 2) == 0 ? unknown_logits(rng, k_stored) : guess_logits(rng, k_stored);
      }
      auto r = make_record(static_cast<std::int64_t>(s), make_topk(rng, std::move(z)));
      if (s == critical) r.is_critical = true;
      doc.records.push_back(std::move(r));
    }
    // A few labels disagree with the construction, as noisy judges would.
    doc.label = pick(rng, 20) == 0 ? !correct : correct;
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::vector<ResponseDocument> expand_game_dataset(std::size_t n, std::uint64_t seed, int k_stored) {
  std::mt19937_64 rng(seed);
  std::vector<ResponseDocument> docs;
  docs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    ResponseDocument doc;
    doc.header.k_stored = k_stored;
    doc.header.model_name = "synthetic";
    doc.header.prompt = "classify tweet " + std::to_string(i);
    doc.header.meta["response_id"] = "q-" + std::to_string(i);

    const bool second_gold = pick(rng, 2) == 0;
    std::vector<double> z(k_stored);
    if (second_gold) {
      // Two strong labels: the model knows more than one answer.
      z[0] = uniform(rng, 19.0, 23.0);
      z[1] = z[0] - uniform(rng, 0.0, 2.0);
      for (int j = 2; j < k_stored; ++j) z[j] = uniform(rng, 6.0, 11.0);
    } else {
      z[0] = uniform(rng, 5.0, 8.0);
      z[1] = z[0] - uniform(rng, 0.0, 2.0);
      for (int j = 2; j < k_stored; ++j) z[j] = uniform(rng, 0.0, 3.0);
    }
    auto topk = make_topk(rng, std::move(z), 100);
    const bool first_gold = pick(rng, 5) != 0;
    std::string gold;
    if (first_gold) gold += std::to_string(topk[0].token_id);
    if (second_gold) gold += (gold.empty() ? "" : ",") + std::to_string(topk[1].token_id);
    if (gold.empty()) gold = std::to_string(topk.back().token_id);
    doc.header.meta["gold"] = gold;

    auto critical = make_record(0, std::move(topk));
    critical.is_critical = true;
    doc.records.push_back(std::move(critical));
    doc.records.push_back(make_record(1, make_topk(rng, certain_logits(rng, k_stored))));
    docs.push_back(std::move(doc));
  }
  return docs;
}

}  // namespace logtoku::synthetic
