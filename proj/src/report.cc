#include "logtoku/report.h"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace logtoku {

HeatmapSpec make_heatmap(const ResponseAssessment& assessment, bool include_quadrants) {
  HeatmapSpec spec;
  spec.include_quadrants = include_quadrants;
  std::vector<double> au, eu;
  for (const auto& w : assessment.words) {
    au.push_back(w.au);
    eu.push_back(w.eu);
  }
  const auto nau = display_normalize(au);
  const auto neu = display_normalize(eu);
  for (std::size_t i = 0; i < assessment.words.size(); ++i) {
    const auto& w = assessment.words[i];
    HeatmapWord hw;
    hw.text = w.word_text;
    hw.au = nau[i];
    hw.eu = neu[i];
    hw.unreliability = nau[i] * neu[i];
    hw.raw_au = w.au;
    hw.raw_eu = w.eu;
    const TokenUncertainty* worst = nullptr;
    for (std::size_t t : w.token_indices) {
      const auto& tok = assessment.tokens[t];
      if (!worst || tok.reliability < worst->reliability) worst = &tok;
    }
    if (worst) hw.quadrant = worst->quadrant;
    spec.words.push_back(std::move(hw));
  }
  return spec;
}

namespace {

// Splits leading whitespace off so highlighting covers only the word.
std::pair<std::string_view, std::string_view> split_leading_space(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n')) ++i;
  return {text.substr(0, i), text.substr(i)};
}

int channel(double base, double target, double weight) {
  return static_cast<int>(std::lround(base + (target - base) * std::clamp(weight, 0.0, 1.0)));
}

std::string html_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&#39;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_terminal(const HeatmapSpec& spec, TerminalStyle style) {
  std::string out;
  for (const auto& w : spec.words) {
    auto [space, core] = split_leading_space(w.text);
    out += space;
    const bool quadrant = spec.include_quadrants && w.quadrant != Quadrant::kUnclassified;
    if (style == TerminalStyle::kPlain) {
      out += core;
      if (w.unreliability > 0.0) out += fmt::format("[{:.2f}]", w.unreliability);
      if (quadrant) out += fmt::format("{{{}}}", quadrant_name(w.quadrant));
      continue;
    }
    if (w.unreliability > 0.0) {
      // White to red as unreliability grows.
      const int g = channel(255, 60, w.unreliability);
      out += fmt::format("\x1b[48;2;255;{};{}m\x1b[38;2;0;0;0m{}\x1b[0m", g, g, core);
    } else {
      out += core;
    }
    if (quadrant) out += fmt::format("\x1b[2m{}\x1b[0m", quadrant_name(w.quadrant));
  }
  out += '\n';
  return out;
}

std::string render_html(const HeatmapSpec& spec) {
  std::string out;
  out += "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n";
  out += "<title>" + html_escape(spec.title.empty() ? "Token uncertainty" : spec.title) + "</title>\n";
  out +=
      "<style>\n"
      "body{font-family:sans-serif;margin:2em;line-height:2.4}\n"
      ".w{display:inline-block;padding:0 1px;border-radius:2px}\n"
      ".bar{display:block;height:3px;margin-top:1px}\n"
      ".au{background:#808080}\n"
      ".eu{background:#1f6fd1}\n"
      ".q{font-size:0.6em;vertical-align:super;color:#555}\n"
      ".legend{font-size:0.8em;color:#333;margin-bottom:1em}\n"
      "</style>\n</head>\n<body>\n";
  out += "<div class=\"legend\">background: unreliability; "
         "<span style=\"color:#808080\">gray bar: AU</span>; "
         "<span style=\"color:#1f6fd1\">blue bar: EU</span></div>\n";
  out += "<div class=\"response\">";
  for (const auto& w : spec.words) {
    auto [space, core] = split_leading_space(w.text);
    out += html_escape(space);
    const int g = channel(255, 60, w.unreliability);
    out += fmt::format(
        "<span class=\"w\" style=\"background:rgb(255,{},{})\" "
        "title=\"AU {:.4f} (raw {:.4f}); EU {:.4f} (raw {:.4f}); unreliability {:.4f}\" "
        "data-au=\"{:.6f}\" data-eu=\"{:.6f}\" data-unreliability=\"{:.6f}\">",
        g, g, w.au, w.raw_au, w.eu, w.raw_eu, w.unreliability, w.raw_au, w.raw_eu, w.unreliability);
    out += html_escape(core);
    if (spec.include_quadrants && w.quadrant != Quadrant::kUnclassified) {
      out += fmt::format("<span class=\"q\">{}</span>", quadrant_name(w.quadrant));
    }
    out += fmt::format("<span class=\"bar au\" style=\"width:{:.1f}%\"></span>", 100.0 * w.au);
    out += fmt::format("<span class=\"bar eu\" style=\"width:{:.1f}%\"></span>", 100.0 * w.eu);
    out += "</span>";
  }
  out += "</div>\n</body>\n</html>\n";
  return out;
}

}  // namespace logtoku
