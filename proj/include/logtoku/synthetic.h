#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "logtoku/records.h"

namespace logtoku::synthetic {

// Random logits record: k_stored entries with descending logits drawn around
// `center` with spread `spread`; the first entry is chosen.
LogitsRecord random_record(std::mt19937_64& rng, std::int64_t step, int k_stored, double center,
                           double spread);

// Random canonical document with up to max_records steps.
ResponseDocument random_document(std::mt19937_64& rng, int max_records);

// Responses for the AUROC stress family. Incorrect answers come from
// low-evidence critical tokens; correct answers come from either one dominant
// logit or several comparably large logits (known multiple answers).
std::vector<ResponseDocument> adversarial_family(std::size_t n, std::uint64_t seed,
                                                 int k_stored = 20);

// Expand-game questions whose wrong second classes carry higher EU by
// construction. meta "gold" is set on each document.
std::vector<ResponseDocument> expand_game_dataset(std::size_t n, std::uint64_t seed,
                                                  int k_stored = 20);

}  // namespace logtoku::synthetic
