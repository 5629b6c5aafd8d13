#pragma once

// CSV and SVG emitters for sweep results. Output is byte-stable: every float
// goes through a fixed printf format and element order never depends on
// anything but the input data.

#include <span>
#include <string>
#include <vector>

#include "hwstaff/halfin_whitt.hpp"

namespace hwstaff::cli {

/// %.17g, enough digits to reproduce the binary value when parsed back.
std::string format_double(double v);

/// Quotes a CSV field when it contains a comma, quote or newline.
std::string csv_field(const std::string& s);

/// hw regime: a,s,c,c_star,gap. inverse regime: s,a,c. An error column is
/// appended when at least one row failed.
std::string sweep_to_csv(const halfin_whitt::SweepResult& sweep);

struct PlotSpec {
  int width = 640;
  int height = 480;
  bool log_x = false;
  std::string title;
  std::string x_label;
  std::string y_label;
};

/// Standalone SVG 1.1 document with axes, tick labels and one polyline
/// through (x[i], y[i]).
std::string render_svg(const PlotSpec& spec, std::span<const double> x, std::span<const double> y);

/// Plot of the C column against the sweep parameter; failed rows skipped.
std::string sweep_to_svg(const halfin_whitt::SweepResult& sweep, int width, int height, bool log_x);

}  // namespace hwstaff::cli
