#pragma once

#include <string>
#include <utility>
#include <vector>

namespace hsfc::cli {

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
  bool steps = false;   // draw as a staircase
  bool markers = false;
};

struct PlotOptions {
  std::string title;
  std::string xlabel;
  std::string ylabel;
  bool log_x = false;
  int width = 640;
  int height = 400;
};

/// Static line plot; deterministic output for identical input.
std::string svg_plot(const std::vector<Series>& series, const PlotOptions& opts);

}  // namespace hsfc::cli
