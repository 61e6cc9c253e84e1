#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "logtoku/aggregation.h"

namespace logtoku {

struct HeatmapWord {
  std::string text;
  double au = 0.0;  // display-normalized, [0, 1]
  double eu = 0.0;
  double unreliability = 0.0;  // au * eu after normalization
  double raw_au = 0.0;
  double raw_eu = 0.0;
  Quadrant quadrant = Quadrant::kUnclassified;
};

struct HeatmapSpec {
  std::vector<HeatmapWord> words;
  std::string au_channel = "gray";
  std::string eu_channel = "blue";
  bool include_quadrants = false;
  std::string title;
};

// Normalizes word AU and EU over the response and multiplies them. Word
// quadrants take the quadrant of the member token with the largest AU * EU.
HeatmapSpec make_heatmap(const ResponseAssessment& assessment, bool include_quadrants = false);

enum class TerminalStyle { kAnsi, kPlain };

std::string render_terminal(const HeatmapSpec& spec, TerminalStyle style = TerminalStyle::kAnsi);
std::string render_html(const HeatmapSpec& spec);

}  // namespace logtoku
