#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "cli/output.hpp"
#include "cli/xml_check.hpp"
#include "hwstaff/errors.hpp"
#include "hwstaff/halfin_whitt.hpp"

namespace cli = hwstaff::cli;
namespace hw = hwstaff::halfin_whitt;

namespace {

std::vector<std::vector<std::string>> split_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      const char c = line[i];
      if (quoted) {
        if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else if (c == '"') {
          quoted = false;
        } else {
          field += c;
        }
      } else if (c == '"') {
        quoted = true;
      } else if (c == ',') {
        fields.push_back(field);
        field.clear();
      } else {
        field += c;
      }
    }
    fields.push_back(field);
    rows.push_back(fields);
  }
  return rows;
}

TEST(FormatDouble, RoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, 4.9e-324, -2.5, 0.22336127479826074}) {
    EXPECT_EQ(std::strtod(cli::format_double(v).c_str(), nullptr), v);
  }
  EXPECT_EQ(cli::format_double(5.0), "5");
}

TEST(CsvField, Quoting) {
  EXPECT_EQ(cli::csv_field("plain"), "plain");
  EXPECT_EQ(cli::csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(cli::csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(cli::csv_field("two\nlines"), "\"two lines\"");
}

TEST(SweepCsv, HwRoundTrip) {
  const auto grid = hw::make_grid(1.0, 100.0, 7, true);
  const auto sweep = hw::hw_sweep(1.0, grid);
  const auto rows = split_csv(cli::sweep_to_csv(sweep));
  ASSERT_EQ(rows.size(), 8u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"a", "s", "c", "c_star", "gap"}));
  for (std::size_t i = 0; i < sweep.rows.size(); ++i) {
    ASSERT_EQ(rows[i + 1].size(), 5u);
    EXPECT_EQ(std::stod(rows[i + 1][0]), sweep.rows[i].a);
    EXPECT_EQ(std::stod(rows[i + 1][1]), sweep.rows[i].s);
    EXPECT_EQ(std::stod(rows[i + 1][2]), sweep.rows[i].c_value);
    EXPECT_EQ(std::stod(rows[i + 1][3]), *sweep.rows[i].c_star);
    EXPECT_EQ(std::stod(rows[i + 1][4]), *sweep.rows[i].gap);
  }
}

TEST(SweepCsv, InverseWithFailedRows) {
  const std::vector<double> grid{1.0, 9.0};
  const auto sweep = hw::inverse_sweep(2.0, grid);
  const auto rows = split_csv(cli::sweep_to_csv(sweep));
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"s", "a", "c", "error"}));
  EXPECT_EQ(rows[1][1], "");
  EXPECT_FALSE(rows[1][3].empty());
  EXPECT_EQ(std::stod(rows[2][1]), 3.0);
  EXPECT_EQ(rows[2][3], "");
}

TEST(Svg, WellFormedAndStable) {
  const auto sweep = hw::hw_sweep(0.5, hw::make_grid(0.01, 1e4, 40, true));
  const std::string first = cli::sweep_to_svg(sweep, 640, 480, true);
  EXPECT_EQ(first, cli::sweep_to_svg(sweep, 640, 480, true));
  EXPECT_EQ(hwstaff::testing::xml_problem(first), "");
  EXPECT_EQ(first.rfind("<?xml", 0), 0u);
  EXPECT_NE(first.find("version=\"1.1\""), std::string::npos);
  EXPECT_NE(first.find("xmlns=\"http://www.w3.org/2000/svg\""), std::string::npos);
  EXPECT_NE(first.find("<polyline"), std::string::npos);
  EXPECT_NE(first.find("width=\"640\""), std::string::npos);
}

TEST(Svg, LinearAxesAndEscaping) {
  cli::PlotSpec spec;
  spec.title = "a < b & c";
  const std::vector<double> x{0.0, 1.0, 2.0};
  const std::vector<double> y{1.0, 1.0, 1.0};
  const std::string svg = cli::render_svg(spec, x, y);
  EXPECT_EQ(hwstaff::testing::xml_problem(svg), "");
  EXPECT_NE(svg.find("a &lt; b &amp; c"), std::string::npos);
}

TEST(Svg, EmptySeriesStillValid) {
  const std::string svg = cli::render_svg(cli::PlotSpec{}, {}, {});
  EXPECT_EQ(hwstaff::testing::xml_problem(svg), "");
  EXPECT_EQ(svg.find("<polyline"), std::string::npos);
}

TEST(Svg, ErrorPaths) {
  cli::PlotSpec spec;
  const std::vector<double> x{1.0, 2.0};
  const std::vector<double> y{1.0};
  EXPECT_THROW(cli::render_svg(spec, x, y), hwstaff::DomainError);
  spec.width = 0;
  EXPECT_THROW(cli::render_svg(spec, {}, {}), hwstaff::DomainError);
  spec.width = 100;
  spec.log_x = true;
  const std::vector<double> xs{0.0, 1.0};
  const std::vector<double> ys{1.0, 2.0};
  EXPECT_THROW(cli::render_svg(spec, xs, ys), hwstaff::DomainError);
}

TEST(XmlCheck, DetectsProblems) {
  EXPECT_NE(hwstaff::testing::xml_problem("<a><b></a>"), "");
  EXPECT_NE(hwstaff::testing::xml_problem("<a/><b/>"), "");
  EXPECT_NE(hwstaff::testing::xml_problem("<a x=\"1></a>"), "");
  EXPECT_EQ(hwstaff::testing::xml_problem("<?xml version=\"1.0\"?><a><b/></a>"), "");
}

}  // namespace
