#include "gscore/svg_plot.hpp"

#include <algorithm>
#include <array>
#include <cstdio>

#include "gscore/errors.hpp"

namespace gscore {
namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 60.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

constexpr std::array<const char*, 6> kPalette = {"#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3", "#937860"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

std::string render_mrlt_svg(std::span<const PlotSeries> series) {
  if (series.empty()) throw ParameterError("nothing to plot");

  Eigen::Index bars = 1;
  for (const auto& s : series) {
    for (Eigen::Index i = 0; i < s.values.size(); ++i) {
      if (s.values[i] > kPlotMassCutoff) bars = std::max(bars, i + 1);
    }
  }

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const double group_w = plot_w / static_cast<double>(bars);
  const double bar_w = group_w * 0.8 / static_cast<double>(series.size());
  const double base_y = kTop + plot_h;

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(kWidth) + "\" height=\"" +
         num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) + "\" fill=\"#ffffff\"/>\n";
  svg += "<g font-family=\"sans-serif\" font-size=\"12\">\n";

  // y axis with gridlines at quarters
  for (int k = 0; k <= 4; ++k) {
    const double v = k / 4.0;
    const double y = base_y - v * plot_h;
    svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(y) + "\" x2=\"" + num(kLeft + plot_w) + "\" y2=\"" + num(y) +
           "\" stroke=\"#dddddd\"/>\n";
    svg += "<text x=\"" + num(kLeft - 6) + "\" y=\"" + num(y + 4) + "\" text-anchor=\"end\">" + num(v) + "</text>\n";
  }
  svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(kLeft) + "\" y2=\"" + num(base_y) +
         "\" stroke=\"#000000\"/>\n";
  svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(base_y) + "\" x2=\"" + num(kLeft + plot_w) + "\" y2=\"" +
         num(base_y) + "\" stroke=\"#000000\"/>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* colour = kPalette[s % kPalette.size()];
    svg += "<g fill=\"" + std::string(colour) + "\">\n";
    for (Eigen::Index i = 0; i < bars; ++i) {
      const double v = i < series[s].values.size() ? std::clamp(series[s].values[i], 0.0, 1.0) : 0.0;
      const double x = kLeft + group_w * static_cast<double>(i) + group_w * 0.1 + bar_w * static_cast<double>(s);
      const double h = v * plot_h;
      svg += "<rect x=\"" + num(x) + "\" y=\"" + num(base_y - h) + "\" width=\"" + num(bar_w) + "\" height=\"" +
             num(h) + "\"/>\n";
    }
    svg += "</g>\n";
  }

  for (Eigen::Index i = 0; i < bars; ++i) {
    const double x = kLeft + group_w * (static_cast<double>(i) + 0.5);
    svg += "<text x=\"" + num(x) + "\" y=\"" + num(base_y + 16) + "\" text-anchor=\"middle\">" + std::to_string(i) +
           "</text>\n";
  }
  svg += "<text x=\"" + num(kLeft + plot_w / 2) + "\" y=\"" + num(kHeight - 10) +
         "\" text-anchor=\"middle\">number of 1-dimensional holes</text>\n";
  svg += "<text x=\"16\" y=\"" + num(kTop + plot_h / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
         num(kTop + plot_h / 2) + ")\">MRLT</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const double y = kTop - 24 + 16 * static_cast<double>(s);
    const double x = kLeft + plot_w - 160;
    svg += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"10\" height=\"10\" fill=\"" +
           kPalette[s % kPalette.size()] + "\"/>\n";
    svg += "<text x=\"" + num(x + 16) + "\" y=\"" + num(y + 9) + "\">" + xml_escape(series[s].label) + "</text>\n";
  }

  svg += "</g>\n</svg>\n";
  return svg;
}

}  // namespace gscore
