#pragma once

#include <span>
#include <string>

#include <Eigen/Core>

namespace gscore {

struct PlotSeries {
  std::string label;
  Eigen::VectorXd values;  // MRLT
};

/// Bars whose index exceeds the last one with mass > this (in any series) are dropped.
inline constexpr double kPlotMassCutoff = 1e-3;

/// Grouped bar chart of MRLT against hole count, as a standalone SVG 1.1
/// document. Output depends only on the input (fixed-precision coordinates).
std::string render_mrlt_svg(std::span<const PlotSeries> series);

}  // namespace gscore
