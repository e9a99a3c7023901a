#include "hsfc/cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace hsfc::cli {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
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

std::string svg_plot(const std::vector<Series>& series, const PlotOptions& opts) {
  const double left = 70, right = 20, top = 40, bottom = 50;
  const double pw = opts.width - left - right, ph = opts.height - top - bottom;
  auto tx = [&](double x) { return opts.log_x ? std::log10(x) : x; };

  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series) {
    for (auto [x, y] : s.points) {
      if (!std::isfinite(y) || (opts.log_x && !(x > 0))) continue;
      x0 = std::min(x0, tx(x));
      x1 = std::max(x1, tx(x));
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  }
  if (!(x0 <= x1)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 == x0) x1 = x0 + 1;
  if (y1 == y0) y0 -= 0.5, y1 += 0.5;
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;
  auto px = [&](double x) { return left + (tx(x) - x0) / (x1 - x0) * pw; };
  auto py = [&](double y) { return top + (1.0 - (y - y0) / (y1 - y0)) * ph; };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(opts.width) + "\" height=\"" +
         std::to_string(opts.height) + "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + num(opts.width / 2.0) + "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" +
         escape(opts.title) + "</text>\n";
  out += "<rect x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" + num(pw) + "\" height=\"" + num(ph) +
         "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = x0 + (x1 - x0) * i / 4.0;
    const double fy = y0 + (y1 - y0) * i / 4.0;
    const double sx = left + pw * i / 4.0, sy = top + ph * (1.0 - i / 4.0);
    out += "<text x=\"" + num(sx) + "\" y=\"" + num(top + ph + 16) + "\" text-anchor=\"middle\">" +
           tick(opts.log_x ? std::pow(10.0, fx) : fx) + "</text>\n";
    out += "<text x=\"" + num(left - 6) + "\" y=\"" + num(sy + 4) + "\" text-anchor=\"end\">" + tick(fy) + "</text>\n";
  }
  out += "<text x=\"" + num(left + pw / 2) + "\" y=\"" + num(opts.height - 10.0) + "\" text-anchor=\"middle\">" +
         escape(opts.xlabel) + "</text>\n";
  out += "<text transform=\"translate(16," + num(top + ph / 2) + ") rotate(-90)\" text-anchor=\"middle\">" +
         escape(opts.ylabel) + "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kPalette[k % (sizeof kPalette / sizeof kPalette[0])];
    std::string pts;
    for (std::size_t i = 0; i < s.points.size(); ++i) {
      auto [x, y] = s.points[i];
      if (!std::isfinite(y) || (opts.log_x && !(x > 0))) continue;
      if (s.steps && i > 0) pts += num(px(x)) + "," + num(py(s.points[i - 1].second)) + " ";
      pts += num(px(x)) + "," + num(py(y)) + " ";
    }
    out += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\" points=\"" + pts +
           "\"/>\n";
    if (s.markers) {
      for (auto [x, y] : s.points) {
        if (!std::isfinite(y) || (opts.log_x && !(x > 0))) continue;
        out += "<circle cx=\"" + num(px(x)) + "\" cy=\"" + num(py(y)) + "\" r=\"3\" fill=\"" + color + "\"/>\n";
      }
    }
    const double ly = top + 14 + 14.0 * k;
    out += "<text x=\"" + num(left + pw - 8) + "\" y=\"" + num(ly) + "\" text-anchor=\"end\" fill=\"" + color + "\">" +
           escape(s.label) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace hsfc::cli
