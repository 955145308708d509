#include "darkpot/app/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace darkpot::app {

namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 70, kRight = 150, kTop = 40, kBottom = 50;
const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

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

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void settle() {
    if (!(hi >= lo)) lo = 0.0, hi = 1.0;
    if (hi == lo) lo -= 0.5, hi += 0.5;
  }
};

std::string header(const PlotStyle& style) {
  return fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\" "
      "font-family=\"sans-serif\" font-size=\"12\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      "<text x=\"{2}\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">{3}</text>\n",
      kWidth, kHeight, kLeft + (kWidth - kLeft - kRight) / 2, escape(style.title));
}

std::string axes(const Range& xr, const Range& yr, const PlotStyle& style) {
  const double w = kWidth - kLeft - kRight, h = kHeight - kTop - kBottom;
  std::string s = fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n",
                              kLeft, kTop, w, h);
  for (int i = 0; i <= 4; ++i) {
    const double fx = kLeft + w * i / 4.0;
    const double fy = kTop + h * (1.0 - i / 4.0);
    const double vx = xr.lo + (xr.hi - xr.lo) * i / 4.0;
    double vy = yr.lo + (yr.hi - yr.lo) * i / 4.0;
    if (style.log_y) vy = std::pow(10.0, vy);
    s += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{:.4g}</text>\n", fx, kTop + h + 16, vx);
    s += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\">{:.4g}</text>\n", kLeft - 6, fy + 4, vy);
  }
  s += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{}</text>\n", kLeft + w / 2,
                   kHeight - 10, escape(style.x_label));
  s += fmt::format("<text x=\"16\" y=\"{:.1f}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {:.1f})\">{}</text>\n",
                   kTop + h / 2, kTop + h / 2, escape(style.y_label));
  return s;
}

}  // namespace

std::string line_plot(const std::vector<Series>& series, const PlotStyle& style) {
  auto ty = [&](double v) { return style.log_y ? (v > 0 ? std::log10(v) : std::nan("")) : v; };
  Range xr, yr;
  for (const auto& s : series) {
    for (double v : s.x) xr.add(v);
    for (double v : s.y) yr.add(ty(v));
  }
  xr.settle();
  yr.settle();
  const double w = kWidth - kLeft - kRight, h = kHeight - kTop - kBottom;
  auto px = [&](double v) { return kLeft + w * (v - xr.lo) / (xr.hi - xr.lo); };
  auto py = [&](double v) { return kTop + h * (1.0 - (ty(v) - yr.lo) / (yr.hi - yr.lo)); };

  std::string out = header(style) + axes(xr, yr, style);
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kPalette[k % std::size(kPalette)];
    if (s.markers) {
      for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
        const double yy = py(s.y[i]);
        if (!std::isfinite(yy)) continue;
        out += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3\" fill=\"{}\"/>\n", px(s.x[i]), yy, color);
      }
    } else {
      std::string pts;
      for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
        const double yy = py(s.y[i]);
        if (!std::isfinite(yy)) continue;
        pts += fmt::format("{:.2f},{:.2f} ", px(s.x[i]), yy);
      }
      out += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"{} points=\"{}\"/>\n", color,
                         s.dashed ? " stroke-dasharray=\"5,3\"" : "", pts);
    }
    out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" fill=\"{}\">{}</text>\n", kWidth - kRight + 10,
                       kTop + 16 + 16.0 * static_cast<double>(k), color, escape(s.name));
  }
  out += "</svg>\n";
  return out;
}

std::string heatmap(const std::vector<double>& xs, const std::vector<double>& ys,
                    const std::vector<double>& values, const PlotStyle& style) {
  Range xr, yr, vr;
  for (double v : xs) xr.add(v);
  for (double v : ys) yr.add(v);
  for (double v : values) vr.add(v);
  xr.settle();
  yr.settle();
  vr.settle();
  const double w = kWidth - kLeft - kRight, h = kHeight - kTop - kBottom;
  // At most 120 cells per side.
  const std::size_t sx = std::max<std::size_t>(1, (xs.size() + 119) / 120);
  const std::size_t sy = std::max<std::size_t>(1, (ys.size() + 119) / 120);
  const double cw = w / std::ceil(static_cast<double>(xs.size()) / static_cast<double>(sx));
  const double ch = h / std::ceil(static_cast<double>(ys.size()) / static_cast<double>(sy));

  std::string out = header(style);
  std::size_t row = 0;
  for (std::size_t j = 0; j < ys.size(); j += sy, ++row) {
    std::size_t col = 0;
    for (std::size_t i = 0; i < xs.size(); i += sx, ++col) {
      double v = 0.0;
      for (std::size_t a = j; a < std::min(j + sy, ys.size()); ++a) {
        for (std::size_t b = i; b < std::min(i + sx, xs.size()); ++b) v = std::max(v, values[a * xs.size() + b]);
      }
      const double t = (v - vr.lo) / (vr.hi - vr.lo);
      const int shade = static_cast<int>(std::lround(255.0 * (1.0 - t)));
      out += fmt::format("<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"rgb({},{},255)\"/>\n",
                         kLeft + cw * static_cast<double>(col), kTop + h - ch * static_cast<double>(row + 1),
                         cw + 0.05, ch + 0.05, shade, shade);
    }
  }
  out += axes(xr, yr, style);
  out += "</svg>\n";
  return out;
}

}  // namespace darkpot::app
