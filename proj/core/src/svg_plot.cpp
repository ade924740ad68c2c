#include "rejopt/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace rejopt::svg {

namespace {

constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 150.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 55.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", std::abs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::vector<double> nice_ticks(double lo, double hi, int target) {
  if (!(hi > lo)) return {lo};
  const double raw = (hi - lo) / std::max(target, 1);
  const double magnitude = std::pow(10.0, std::floor(std::log10(raw)));
  double step = magnitude;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * magnitude;
    if (step >= raw) break;
  }
  std::vector<double> ticks;
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * step; t += step) ticks.push_back(t);
  return ticks;
}

std::string render(const LineChart& chart) {
  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = x_lo, y_hi = -x_lo;
  auto tx = [&](double x) { return chart.log_x ? std::log10(x) : x; };
  for (const auto& s : chart.series)
    for (const auto& [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      x_lo = std::min(x_lo, tx(x));
      x_hi = std::max(x_hi, tx(x));
      y_lo = std::min(y_lo, y);
      y_hi = std::max(y_hi, y);
    }
  if (!std::isfinite(x_lo)) x_lo = 0.0, x_hi = 1.0, y_lo = 0.0, y_hi = 1.0;
  if (x_hi <= x_lo) x_hi = x_lo + 1.0;
  if (y_hi <= y_lo) y_hi = y_lo + 1.0;
  const double y_pad = 0.05 * (y_hi - y_lo);
  y_lo -= y_pad;
  y_hi += y_pad;

  const double plot_w = chart.width - kMarginLeft - kMarginRight;
  const double plot_h = chart.height - kMarginTop - kMarginBottom;
  auto px = [&](double x) { return kMarginLeft + (tx(x) - x_lo) / (x_hi - x_lo) * plot_w; };
  auto py = [&](double y) { return kMarginTop + (y_hi - y) / (y_hi - y_lo) * plot_h; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << chart.width << "\" height=\"" << chart.height
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << num(kMarginLeft + plot_w / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
      << escape(chart.title) << "</text>\n";

  for (const auto& band : chart.shaded) {
    const double a = std::clamp(px(band.x_begin), kMarginLeft, kMarginLeft + plot_w);
    const double b = std::clamp(px(band.x_end), kMarginLeft, kMarginLeft + plot_w);
    out << "<rect x=\"" << num(a) << "\" y=\"" << num(kMarginTop) << "\" width=\"" << num(b - a) << "\" height=\""
        << num(plot_h) << "\" fill=\"#f2c6c6\" opacity=\"0.6\"/>\n";
  }

  // Axes and ticks.
  out << "<path d=\"M" << num(kMarginLeft) << ' ' << num(kMarginTop) << " V" << num(kMarginTop + plot_h) << " H"
      << num(kMarginLeft + plot_w) << "\" stroke=\"black\" fill=\"none\"/>\n";
  for (double t : nice_ticks(x_lo, x_hi)) {
    const double value = chart.log_x ? std::pow(10.0, t) : t;
    const double x = px(value);
    out << "<path d=\"M" << num(x) << ' ' << num(kMarginTop + plot_h) << " v5\" stroke=\"black\"/>"
        << "<text x=\"" << num(x) << "\" y=\"" << num(kMarginTop + plot_h + 18) << "\" text-anchor=\"middle\">"
        << tick_label(value) << "</text>\n";
  }
  for (double t : nice_ticks(y_lo, y_hi)) {
    const double y = py(t);
    out << "<path d=\"M" << num(kMarginLeft - 5) << ' ' << num(y) << " h5\" stroke=\"black\"/>"
        << "<text x=\"" << num(kMarginLeft - 8) << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\">"
        << tick_label(t) << "</text>\n";
  }
  out << "<text x=\"" << num(kMarginLeft + plot_w / 2) << "\" y=\"" << num(chart.height - 12.0)
      << "\" text-anchor=\"middle\">" << escape(chart.x_label) << "</text>\n";
  out << "<text transform=\"translate(16 " << num(kMarginTop + plot_h / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
      << escape(chart.y_label) << "</text>\n";

  double legend_y = kMarginTop + 10;
  for (const auto& s : chart.series) {
    if (s.markers_only) {
      for (const auto& [x, y] : s.points)
        out << "<circle cx=\"" << num(px(x)) << "\" cy=\"" << num(py(y)) << "\" r=\"3\" fill=\"" << s.color
            << "\"/>\n";
    } else {
      out << "<path d=\"";
      bool pen_down = false;
      for (const auto& [x, y] : s.points) {
        if (!std::isfinite(y)) {
          pen_down = false;
          continue;
        }
        out << (pen_down ? " L" : " M") << num(px(x)) << ' ' << num(py(y));
        pen_down = true;
      }
      out << "\" stroke=\"" << s.color << "\" stroke-width=\"1.8\" fill=\"none\""
          << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>\n";
    }
    const double lx = kMarginLeft + plot_w + 12;
    out << "<path d=\"M" << num(lx) << ' ' << num(legend_y) << " h22\" stroke=\"" << s.color
        << "\" stroke-width=\"3\"/>"
        << "<text x=\"" << num(lx + 28) << "\" y=\"" << num(legend_y + 4) << "\">" << escape(s.name) << "</text>\n";
    legend_y += 18;
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace rejopt::svg
