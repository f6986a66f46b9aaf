#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "explora/analysis.hpp"

namespace explora {

namespace svgdetail {

inline const char* palette(int i) {
  static const char* colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                 "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  return colors[i % 10];
}

inline std::string fmt_tick(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

}  // namespace svgdetail

// Minimal self-contained line chart, one polyline per method.
inline std::string render_line_chart(const WideSeries& ws, const std::string& title,
                                     const std::string& y_label) {
  ws.validate();
  const double W = 800, H = 500;
  const double ml = 70, mr = 170, mt = 45, mb = 50;
  const double pw = W - ml - mr, ph = H - mt - mb;
  double ymin = std::numeric_limits<double>::infinity(), ymax = -ymin;
  for (const auto& c : ws.columns)
    for (double v : c) {
      if (std::isfinite(v)) {
        ymin = std::min(ymin, v);
        ymax = std::max(ymax, v);
      }
    }
  if (!std::isfinite(ymin)) {
    ymin = 0.0;
    ymax = 1.0;
  }
  if (ymax - ymin < 1e-12) {
    ymax += 0.5;
    ymin -= 0.5;
  }
  double xmin = ws.t0, xmax = ws.t0 + std::max(ws.rows() - 1, 1);
  auto px = [&](double t) { return ml + (t - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double v) { return mt + (1.0 - (v - ymin) / (ymax - ymin)) * ph; };

  std::ostringstream svg;
  svg.precision(8);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  svg << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  svg << "<text x=\"" << W / 2 << "\" y=\"25\" text-anchor=\"middle\" font-family=\"sans-serif\""
      << " font-size=\"16\">" << title << "</text>\n";
  // axes
  svg << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << mt + ph
      << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << ml << "\" y1=\"" << mt + ph << "\" x2=\"" << ml + pw << "\" y2=\""
      << mt + ph << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    double v = ymin + (ymax - ymin) * i / 4.0;
    double y = py(v);
    svg << "<line x1=\"" << ml - 4 << "\" y1=\"" << y << "\" x2=\"" << ml << "\" y2=\"" << y
        << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << ml - 8 << "\" y=\"" << y + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
        << svgdetail::fmt_tick(v) << "</text>\n";
    double t = xmin + (xmax - xmin) * i / 4.0;
    double x = px(t);
    svg << "<line x1=\"" << x << "\" y1=\"" << mt + ph << "\" x2=\"" << x << "\" y2=\""
        << mt + ph + 4 << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << x << "\" y=\"" << mt + ph + 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << svgdetail::fmt_tick(t) << "</text>\n";
  }
  svg << "<text x=\"" << ml + pw / 2 << "\" y=\"" << H - 10
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">t</text>\n";
  svg << "<text x=\"18\" y=\"" << mt + ph / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\""
      << " transform=\"rotate(-90 18 " << mt + ph / 2 << ")\">" << y_label << "</text>\n";
  for (std::size_t m = 0; m < ws.methods.size(); ++m) {
    svg << "<polyline fill=\"none\" stroke=\"" << svgdetail::palette(static_cast<int>(m))
        << "\" stroke-width=\"1.5\" points=\"";
    for (int r = 0; r < ws.rows(); ++r) {
      double v = ws.columns[m][r];
      if (!std::isfinite(v)) continue;
      svg << px(ws.t0 + r) << "," << py(v) << " ";
    }
    svg << "\"/>\n";
    double ly = mt + 16.0 * (m + 1);
    svg << "<line x1=\"" << ml + pw + 10 << "\" y1=\"" << ly << "\" x2=\"" << ml + pw + 34
        << "\" y2=\"" << ly << "\" stroke=\"" << svgdetail::palette(static_cast<int>(m))
        << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << ml + pw + 40 << "\" y=\"" << ly + 4
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << ws.methods[m] << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace explora
