#include "output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "hwstaff/errors.hpp"

namespace hwstaff::cli {

namespace {

std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

double nice_step(double span, int target_ticks) {
  const double raw = span / target_ticks;
  const double magnitude = std::pow(10.0, std::floor(std::log10(raw)));
  const double r = raw / magnitude;
  const double nice = r < 1.5 ? 1.0 : r < 3.0 ? 2.0 : r < 7.0 ? 5.0 : 10.0;
  return nice * magnitude;
}

std::vector<double> linear_ticks(double lo, double hi) {
  const double step = nice_step(hi - lo, 5);
  std::vector<double> ticks;
  for (double t = std::ceil(lo / step - 1e-9) * step; t <= hi + step * 1e-9; t += step) {
    ticks.push_back(std::abs(t) < step * 1e-9 ? 0.0 : t);
  }
  return ticks;
}

// Ticks in data units for a log axis spanning [lo, hi] (both > 0).
std::vector<double> log_ticks(double lo, double hi) {
  std::vector<double> ticks;
  const int first = static_cast<int>(std::floor(std::log10(lo)));
  const int last = static_cast<int>(std::ceil(std::log10(hi)));
  const bool sparse = last - first < 3;
  for (int e = first; e <= last; ++e) {
    for (double m : {1.0, 2.0, 5.0}) {
      if (m != 1.0 && !sparse) continue;
      const double t = m * std::pow(10.0, e);
      if (t >= lo * (1 - 1e-12) && t <= hi * (1 + 1e-12)) ticks.push_back(t);
    }
  }
  return ticks;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += (c == '\n' || c == '\r') ? ' ' : c;
  }
  return out + "\"";
}

std::string sweep_to_csv(const halfin_whitt::SweepResult& sweep) {
  const bool with_errors = sweep.failed_rows() > 0;
  const bool hw = sweep.regime == halfin_whitt::Regime::LoadParametrized;
  std::ostringstream out;
  out << (hw ? "a,s,c,c_star,gap" : "s,a,c") << (with_errors ? ",error" : "") << '\n';
  for (const auto& r : sweep.rows) {
    if (hw) {
      out << format_double(r.a) << ',' << (r.s > 0.0 ? format_double(r.s) : "") << ',';
      if (r.ok()) {
        out << format_double(r.c_value) << ',' << format_double(r.c_star.value_or(0.0)) << ','
            << format_double(r.gap.value_or(0.0));
      } else {
        out << ",,";
      }
    } else {
      out << format_double(r.s) << ',' << (r.ok() ? format_double(r.a) : "") << ','
          << (r.ok() ? format_double(r.c_value) : "");
    }
    if (with_errors) out << ',' << csv_field(r.error.value_or(""));
    out << '\n';
  }
  return out.str();
}

std::string render_svg(const PlotSpec& spec, std::span<const double> x, std::span<const double> y) {
  if (spec.width <= 0 || spec.height <= 0) throw DomainError("svg: width and height must be > 0");
  if (x.size() != y.size()) throw DomainError("svg: x and y must have equal length");
  if (spec.log_x && std::any_of(x.begin(), x.end(), [](double v) { return !(v > 0.0); })) {
    throw DomainError("svg: log x axis requires positive x values");
  }

  const double left = 80.0;
  const double right = 20.0;
  const double top = 40.0;
  const double bottom = 55.0;
  const double plot_w = std::max(1.0, spec.width - left - right);
  const double plot_h = std::max(1.0, spec.height - top - bottom);

  double x_lo = 0.0;
  double x_hi = 1.0;
  double y_lo = 0.0;
  double y_hi = 1.0;
  if (!x.empty()) {
    const auto [xmin, xmax] = std::minmax_element(x.begin(), x.end());
    const auto [ymin, ymax] = std::minmax_element(y.begin(), y.end());
    x_lo = *xmin;
    x_hi = *xmax;
    y_lo = *ymin;
    y_hi = *ymax;
  }
  if (x_hi <= x_lo) {
    x_hi = spec.log_x ? x_lo * 10.0 : x_lo + 1.0;
  }
  if (y_hi <= y_lo) {
    const double pad = y_lo == 0.0 ? 1.0 : 0.5 * std::abs(y_lo);
    y_lo -= pad;
    y_hi += pad;
  } else {
    const double pad = 0.05 * (y_hi - y_lo);
    y_lo -= pad;
    y_hi += pad;
  }

  const auto axis_x = [&](double v) { return spec.log_x ? std::log10(v) : v; };
  const double ax_lo = axis_x(x_lo);
  const double ax_hi = axis_x(x_hi);
  const auto px = [&](double v) { return left + (axis_x(v) - ax_lo) / (ax_hi - ax_lo) * plot_w; };
  const auto py = [&](double v) { return top + (y_hi - v) / (y_hi - y_lo) * plot_h; };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << spec.width
      << "\" height=\"" << spec.height << "\" viewBox=\"0 0 " << spec.width << ' ' << spec.height
      << "\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << spec.width << "\" height=\"" << spec.height
      << "\" fill=\"white\"/>\n";
  svg << "<text x=\"" << fixed2(left + plot_w / 2) << "\" y=\"24.00\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"16\">" << xml_escape(spec.title) << "</text>\n";

  const std::string x0 = fixed2(left);
  const std::string x1 = fixed2(left + plot_w);
  const std::string y0 = fixed2(top + plot_h);
  const std::string y1 = fixed2(top);
  svg << "<g stroke=\"black\" stroke-width=\"1\">\n";
  svg << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x1 << "\" y2=\"" << y0 << "\"/>\n";
  svg << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x0 << "\" y2=\"" << y1 << "\"/>\n";
  svg << "</g>\n";

  const auto xt = spec.log_x ? log_ticks(x_lo, x_hi) : linear_ticks(x_lo, x_hi);
  const auto yt = linear_ticks(y_lo, y_hi);
  svg << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (double t : xt) {
    const std::string p = fixed2(px(t));
    svg << "<line x1=\"" << p << "\" y1=\"" << y0 << "\" x2=\"" << p << "\" y2=\""
        << fixed2(top + plot_h + 5) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << p << "\" y=\"" << fixed2(top + plot_h + 18)
        << "\" text-anchor=\"middle\">" << tick_label(t) << "</text>\n";
  }
  for (double t : yt) {
    const std::string p = fixed2(py(t));
    svg << "<line x1=\"" << fixed2(left - 5) << "\" y1=\"" << p << "\" x2=\"" << x0 << "\" y2=\""
        << p << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << fixed2(left - 8) << "\" y=\"" << fixed2(py(t) + 4)
        << "\" text-anchor=\"end\">" << tick_label(t) << "</text>\n";
  }
  svg << "</g>\n";

  svg << "<text x=\"" << fixed2(left + plot_w / 2) << "\" y=\"" << fixed2(spec.height - 12.0)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
      << xml_escape(spec.x_label) << "</text>\n";
  svg << "<text x=\"16.00\" y=\"" << fixed2(top + plot_h / 2)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
      << "transform=\"rotate(-90 16.00 " << fixed2(top + plot_h / 2) << ")\">"
      << xml_escape(spec.y_label) << "</text>\n";

  if (!x.empty()) {
    svg << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < x.size(); ++i) {
      svg << (i ? " " : "") << fixed2(px(x[i])) << ',' << fixed2(py(y[i]));
    }
    svg << "\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string sweep_to_svg(const halfin_whitt::SweepResult& sweep, int width, int height, bool log_x) {
  const bool hw = sweep.regime == halfin_whitt::Regime::LoadParametrized;
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& r : sweep.rows) {
    if (!r.ok()) continue;
    xs.push_back(hw ? r.a : r.s);
    ys.push_back(r.c_value);
  }
  char beta[64];
  std::snprintf(beta, sizeof(beta), "%.6g", sweep.beta);

  PlotSpec spec;
  spec.width = width;
  spec.height = height;
  spec.log_x = log_x;
  spec.title = hw ? std::string("C(a + β√a, a), β = ") + beta
                  : std::string("C(s, s − β√s), β = ") + beta;
  spec.x_label = hw ? "offered load a" : "servers s";
  spec.y_label = "delay probability C";
  return render_svg(spec, xs, ys);
}

}  // namespace hwstaff::cli
