#include <doctest.h>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <sstream>

#include "penair/report.hpp"
#include "penair/synth.hpp"

using namespace penair;
using report::Format;

namespace {

CohortSummary summary(double ts, double tas, double tal, double ns, double nas, double nal,
                      std::string task = "genuine signature") {
  CohortSummary s;
  s.database = "BIOSECUR-ID";
  s.task = std::move(task);
  s.cohort = "all";
  s.n_files = 10;
  s.mean_t_s = ts;
  s.mean_t_as = tas;
  s.mean_t_al = tal;
  s.pct = relative_times(ts, tas, tal);
  s.mean_strokes_s = ns;
  s.mean_strokes_as = nas;
  s.mean_strokes_al = nal;
  return s;
}

stats::TestResult result(std::string task, Feature f, double p) {
  stats::TestResult r;
  r.task = std::move(task);
  r.feature = f;
  r.p = p;
  r.significant = p < stats::kSignificance;
  r.u.n_a = 37;
  r.u.n_b = 38;
  r.u.u_a = 512.5;
  return r;
}

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
  return n;
}

boost::property_tree::ptree parse_xml(const std::string& text) {
  std::istringstream in(text);
  boost::property_tree::ptree tree;
  boost::property_tree::read_xml(in, tree);
  return tree;
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(report::fixed(2857.6, 1) == "2857.6");
  CHECK(report::fixed(0.0, 1) == "0.0");
  CHECK(report::fixed(-0.0, 1) == "0.0");
  CHECK(report::fixed(-0.01, 1) == "0.0");
  CHECK(report::fixed(6.62, 2) == "6.62");
  CHECK(report::time_cell(2857.6, 79.58) == "2857.6 (79.6%)");
}

TEST_CASE("time table cells") {
  const std::vector<CohortSummary> rows{summary(2857.6, 715.4, 17.5, 6.62, 5.94, 0.32),
                                        summary(120.0, 30.0, 0.0, 2, 1, 0, "numbers")};
  const auto md = report::render_time_table(rows, Format::Markdown);
  CHECK(md.find("| genuine signature | 2857.6 (79.6%) | 715.4 (19.9%) | 17.5 (0.5%) | 6.62 | 5.94 | 0.32 |") !=
        std::string::npos);
  CHECK(md.find("0.0 (0.0%)") != std::string::npos);
  CHECK(count(md, "### BIOSECUR-ID (all)") == 1);

  const auto csv = report::render_time_table(rows, Format::Csv);
  CHECK(csv.find("BIOSECUR-ID,genuine signature,all,10,0,2857.6,715.4,17.5,79.6,19.9,0.5,6.62,5.94,0.32\n") !=
        std::string::npos);
}

TEST_CASE("rendered percentages reproduce the rendered times") {
  // 1/3 of a mean that rounds differently from its own percentage
  const std::vector<CohortSummary> rows{summary(10.04, 10.04, 79.92, 1, 1, 1),
                                        summary(0.05, 0.05, 1000.0, 1, 1, 1, "t2")};
  const auto csv = report::render_time_table(rows, Format::Csv);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
    REQUIRE(cells.size() == 14);
    const auto pct = relative_times(std::stod(cells[5]), std::stod(cells[6]), std::stod(cells[7]));
    CHECK(cells[8] == report::fixed(pct.on_surface, 1));
    CHECK(cells[9] == report::fixed(pct.in_air_short, 1));
    CHECK(cells[10] == report::fixed(pct.in_air_long, 1));
  }
}

TEST_CASE("p cells") {
  CHECK(report::p_cell(result("letter l", Feature::TAL, 0.0157)) == "0.0157*");
  CHECK(report::p_cell(result("letter l", Feature::TS, 1.0)) == "1.0000");
  CHECK(report::p_cell(result("letter l", Feature::TS, 0.05)) == "0.0500");
}

TEST_CASE("p table layout") {
  std::vector<stats::TestResult> rs;
  const double ps[] = {0.4614, 0.5529, 0.0157, 0.2390, 0.3611, 0.2718};
  for (std::size_t i = 0; i < kFeatures.size(); ++i) rs.push_back(result("letter l", kFeatures[i], ps[i]));
  rs.push_back(result("spiral", Feature::TS, 0.3947));

  const auto md = report::render_p_table(rs, Format::Markdown);
  CHECK(md.find("| Task | p T_S | p T_AS | p T_AL | p Strokes_S | p Strokes_AS | p Strokes_AL |") == 0);
  CHECK(md.find("| letter l | 0.4614 | 0.5529 | 0.0157* | 0.2390 | 0.3611 | 0.2718 |") != std::string::npos);
  CHECK(md.find("| spiral | 0.3947 | n/a |") != std::string::npos);

  const auto csv = report::render_p_table(rs, Format::Csv);
  CHECK(csv.find("task,feature,n_A,n_B,U_A,p,method,significant\n") == 0);
  CHECK(csv.find("letter l,T_AL,37,38,512.5,0.0157,normal,true\n") != std::string::npos);
  CHECK(count(csv, "\n") == 8);
}

TEST_CASE("identical inputs render identical bytes") {
  const std::vector<CohortSummary> rows{summary(1.25, 2.5, 3.75, 1, 2, 3)};
  CHECK(report::render_time_table(rows, Format::Csv) == report::render_time_table(rows, Format::Csv));
}

TEST_CASE("trajectory SVG") {
  SUBCASE("all on-surface") {
    synth::SynthSpec spec;
    spec.plan = {{StrokeClass::OnSurface, 200}};
    const auto s = synth::generate_session(spec);
    const auto svg = report::render_trajectories(s.stream, segment(s.stream));
    CHECK(count(svg, "<polyline class=\"on-surface\"") == 1);
    CHECK(count(svg, "<polyline class=\"in-air\"") == 0);
    CHECK_NOTHROW(parse_xml(svg));
  }
  SUBCASE("three in-air-short strokes and one gap") {
    synth::SynthSpec spec;
    spec.jitter = 1;
    spec.seed = 17;
    spec.plan = {{StrokeClass::OnSurface, 100}, {StrokeClass::InAirShort, 40},
                 {StrokeClass::OnSurface, 100}, {StrokeClass::InAirShort, 40},
                 {StrokeClass::InAirLong, 90},  {StrokeClass::InAirShort, 30},
                 {StrokeClass::OnSurface, 60}};
    const auto s = synth::generate_session(spec);
    REQUIRE(s.truth.count[StrokeClass::InAirShort] == 3);
    const auto svg = report::render_trajectories(s.stream, segment(s.stream));
    CHECK(count(svg, "<polyline class=\"in-air\"") == 3);
    CHECK(count(svg, "<polyline class=\"on-surface\"") == 3);
    CHECK(count(svg, "<line class=\"in-air-long\"") == 1);

    const auto tree = parse_xml(svg);
    const auto& root = tree.get_child("svg");
    std::size_t panels = 0;
    for (const auto& [name, child] : root) {
      if (name == "svg") {
        ++panels;
        CHECK(child.get<std::string>("<xmlattr>.viewBox").size() > 0);
      }
    }
    CHECK(panels == 2);
  }
  SUBCASE("source ids are escaped") {
    std::vector<Sample> rows{{0, 0, 1, PenStatus::OnSurface, 0, 0, 1}};
    const SampleStream stream(rows, "a<b>&\"c\"");
    CHECK_NOTHROW(parse_xml(report::render_trajectories(stream, segment(stream))));
  }
}

TEST_CASE("format names") {
  CHECK(report::parse_format("csv") == Format::Csv);
  CHECK(report::parse_format("md") == Format::Markdown);
  CHECK_FALSE(report::parse_format("xlsx").has_value());
}
