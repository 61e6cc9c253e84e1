#include <cstdlib>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "logtoku/report.h"
#include "logtoku/wire.h"

using namespace logtoku;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// LOGTOKU_UPDATE_GOLDEN=1 rewrites the golden files instead of comparing.
void expect_golden(const std::string& name, const std::string& actual) {
  const std::string path = std::string(LOGTOKU_TEST_DATA) + "/golden/" + name;
  if (std::getenv("LOGTOKU_UPDATE_GOLDEN")) {
    std::ofstream(path, std::ios::binary) << actual;
    return;
  }
  EXPECT_EQ(actual, slurp(path)) << path;
}

HeatmapSpec fixture_spec(bool quadrants) {
  const auto doc = parse_document(slurp(std::string(LOGTOKU_TEST_DATA) + "/data/heatmap_response.jsonl"));
  AssessOptions o;
  o.k_evidence = 4;
  auto spec = make_heatmap(assess_response(doc.records, o), quadrants);
  spec.title = "fixture-1";
  return spec;
}

HeatmapWord word(std::string text, double u) {
  HeatmapWord w;
  w.text = std::move(text);
  w.au = w.eu = w.unreliability = u;
  return w;
}

}  // namespace

TEST(Heatmap, WordsFollowGroups) {
  const auto spec = fixture_spec(false);
  ASSERT_EQ(spec.words.size(), 6u);
  EXPECT_EQ(spec.words[3].text, " positive");
  for (const auto& w : spec.words) {
    EXPECT_GE(w.unreliability, 0.0);
    EXPECT_LE(w.unreliability, 1.0);
    EXPECT_DOUBLE_EQ(w.unreliability, w.au * w.eu);
  }
}

TEST(Heatmap, ZeroUnreliabilityIsUnstyled) {
  HeatmapSpec spec;
  spec.words = {word("calm", 0.0), word(" text", 0.0)};
  EXPECT_EQ(render_terminal(spec), "calm text\n");
}

TEST(Heatmap, FullUnreliabilityIsDarkest) {
  HeatmapSpec spec;
  spec.words = {word("a", 0.0), word(" b", 1.0), word(" c", 0.5)};
  const auto out = render_terminal(spec);
  EXPECT_NE(out.find("\x1b[48;2;255;60;60m"), std::string::npos);
  EXPECT_EQ(out.rfind("\x1b[48;2;255;60;60m"), out.find("\x1b[48;2;255;60;60m"));
}

TEST(Heatmap, EmptyResponseHtml) {
  const auto html = render_html(HeatmapSpec{});
  EXPECT_NE(html.find("<div class=\"response\"></div>"), std::string::npos);
  EXPECT_NE(html.find("</html>"), std::string::npos);
}

TEST(Heatmap, RenderingIsPure) {
  EXPECT_EQ(render_html(fixture_spec(true)), render_html(fixture_spec(true)));
}

TEST(Golden, Terminal) {
  expect_golden("fixture.ansi", render_terminal(fixture_spec(true), TerminalStyle::kAnsi));
  expect_golden("fixture.txt", render_terminal(fixture_spec(true), TerminalStyle::kPlain));
}

TEST(Golden, Html) { expect_golden("fixture.html", render_html(fixture_spec(true))); }
