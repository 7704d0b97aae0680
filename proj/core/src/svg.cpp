#include "halloss/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "halloss/format.hpp"

namespace halloss::io {

namespace {

constexpr const char* kPalette[] = {"#d62728", "#1f77b4", "#2ca02c",
                                    "#9467bd", "#ff7f0e", "#8c564b"};

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void include(double v) {
    if (std::isfinite(v)) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  void pad() {
    if (lo > hi) {
      lo = 0.0;
      hi = 1.0;
    } else if (lo == hi) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
};

// Fixed two-decimal tick labels; plenty for a diagnostic plot and keeps
// label widths sane.
std::string tick_label(double v) {
  const double r = std::round(v * 100.0) / 100.0;
  std::string s = dtos(r);
  return s;
}

}  // namespace

void write_line_plot_svg(std::ostream& os, const std::string& title,
                         const std::string& x_label,
                         const std::string& y_label,
                         std::span<const PlotSeries> series, int width,
                         int height) {
  constexpr int kMarginLeft = 64;
  constexpr int kMarginRight = 150;
  constexpr int kMarginTop = 36;
  constexpr int kMarginBottom = 48;
  const int plot_w = width - kMarginLeft - kMarginRight;
  const int plot_h = height - kMarginTop - kMarginBottom;
  if (plot_w <= 0 || plot_h <= 0) {
    throw std::invalid_argument("write_line_plot_svg: canvas too small");
  }

  Range xr, yr;
  for (const auto& s : series) {
    if (s.x.size() != s.y.size()) {
      throw std::invalid_argument("write_line_plot_svg: x/y size mismatch");
    }
    for (double v : s.x) xr.include(v);
    for (double v : s.y) yr.include(v);
  }
  xr.pad();
  yr.pad();

  const auto px = [&](double x) {
    return kMarginLeft + (x - xr.lo) / (xr.hi - xr.lo) * plot_w;
  };
  const auto py = [&](double y) {
    return kMarginTop + (yr.hi - y) / (yr.hi - yr.lo) * plot_h;
  };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
     << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
     << height << "\">\n";
  os << "<rect width=\"" << width << "\" height=\"" << height
     << "\" fill=\"white\"/>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" "
        "font-family=\"sans-serif\" font-size=\"14\">"
     << title << "</text>\n";

  // Frame.
  os << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop
     << "\" width=\"" << plot_w << "\" height=\"" << plot_h
     << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

  // Ticks: five per axis, evenly spaced in data units.
  constexpr int kTicks = 5;
  for (int i = 0; i < kTicks; ++i) {
    const double fx = xr.lo + (xr.hi - xr.lo) * i / (kTicks - 1);
    const double gx = px(fx);
    os << "<line x1=\"" << dtos(gx) << "\" y1=\"" << kMarginTop + plot_h
       << "\" x2=\"" << dtos(gx) << "\" y2=\"" << kMarginTop + plot_h + 5
       << "\" stroke=\"#333333\"/>\n";
    os << "<text x=\"" << dtos(gx) << "\" y=\"" << kMarginTop + plot_h + 18
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
          "font-size=\"11\">"
       << tick_label(fx) << "</text>\n";

    const double fy = yr.lo + (yr.hi - yr.lo) * i / (kTicks - 1);
    const double gy = py(fy);
    os << "<line x1=\"" << kMarginLeft - 5 << "\" y1=\"" << dtos(gy)
       << "\" x2=\"" << kMarginLeft << "\" y2=\"" << dtos(gy)
       << "\" stroke=\"#333333\"/>\n";
    os << "<text x=\"" << kMarginLeft - 8 << "\" y=\"" << dtos(gy + 4)
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
          "font-size=\"11\">"
       << tick_label(fy) << "</text>\n";
  }

  os << "<text x=\"" << kMarginLeft + plot_w / 2 << "\" y=\"" << height - 10
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        "font-size=\"12\">"
     << x_label << "</text>\n";
  os << "<text x=\"16\" y=\"" << kMarginTop + plot_h / 2
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        "font-size=\"12\" transform=\"rotate(-90 16 "
     << kMarginTop + plot_h / 2 << ")\">"
     << y_label << "</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    const char* color = kPalette[si % std::size(kPalette)];
    os << "<polyline fill=\"none\" stroke=\"" << color
       << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (i != 0) os << ' ';
      os << dtos(px(s.x[i])) << ',' << dtos(py(s.y[i]));
    }
    os << "\"/>\n";

    const int ly = kMarginTop + 14 + static_cast<int>(si) * 18;
    os << "<line x1=\"" << kMarginLeft + plot_w + 10 << "\" y1=\"" << ly
       << "\" x2=\"" << kMarginLeft + plot_w + 34 << "\" y2=\"" << ly
       << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
    os << "<text x=\"" << kMarginLeft + plot_w + 40 << "\" y=\"" << ly + 4
       << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.label
       << "</text>\n";
  }

  os << "</svg>\n";
}

}  // namespace halloss::io
