#pragma once

#include <string>
#include <vector>

namespace darkpot::app {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  bool markers = false;  // points instead of a polyline
  bool dashed = false;
};

struct PlotStyle {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y = false;
};

std::string line_plot(const std::vector<Series>& series, const PlotStyle& style);

// values is row-major with ys.size() rows and xs.size() columns.
std::string heatmap(const std::vector<double>& xs, const std::vector<double>& ys,
                    const std::vector<double>& values, const PlotStyle& style);

}  // namespace darkpot::app
