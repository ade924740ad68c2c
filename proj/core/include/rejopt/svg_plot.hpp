#pragma once

#include <string>
#include <utility>
#include <vector>

namespace rejopt::svg {

struct Series {
  std::string name;
  std::string color;
  std::vector<std::pair<double, double>> points;
  bool dashed = false;
  bool markers_only = false;
};

struct Band {
  double x_begin = 0.0;
  double x_end = 0.0;
};

/// Simple line chart: axes with ticks, polylines, optional shaded x-bands
/// and a legend. Pure text output, no external assets.
struct LineChart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  std::vector<Band> shaded;  ///< drawn behind the series
  bool log_x = false;
  int width = 720;
  int height = 440;
};

std::string render(const LineChart& chart);

/// Roughly `target` evenly spaced round tick values (1, 2, 5 x 10^k steps)
/// covering [lo, hi].
std::vector<double> nice_ticks(double lo, double hi, int target = 6);

}  // namespace rejopt::svg
