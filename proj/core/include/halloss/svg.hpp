#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace halloss::io {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Static SVG line plot: axes, ticks, legend, one polyline per series.
/// Output depends only on the inputs, so identical calls are byte-stable.
void write_line_plot_svg(std::ostream& os, const std::string& title,
                         const std::string& x_label,
                         const std::string& y_label,
                         std::span<const PlotSeries> series, int width = 720,
                         int height = 480);

}  // namespace halloss::io
