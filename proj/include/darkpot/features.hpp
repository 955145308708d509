#pragma once

#include <string>
#include <utility>
#include <vector>

#include "darkpot/potentials.hpp"

namespace darkpot {

struct Extremum {
  double x = 0.0;
  double value = 0.0;
};

struct BarrierFeatures {
  std::vector<Extremum> peaks;  // sorted by x
  std::vector<Extremum> dips;   // one between each pair of consecutive peaks
  double well_width = 0.0;      // inner half-max crossings of the lower peak around the deepest dip
  std::vector<double> spacings;   // consecutive peak distances
  std::vector<double> asymmetry;  // peaks[i+1].value / peaks[i].value
  // Reference point for position errors: the well center (double) or the
  // central peak (triple). NaN when unknown.
  double center = 0.0;
  double wavelength = 0.0;      // 2 pi / k
  bool out_of_regime = false;   // analytic forms used outside their approximation
};

// Extrema of U0 inside [window.first, window.second].
BarrierFeatures find_extrema(const PotentialGrid& pg, std::pair<double, double> window);
BarrierFeatures find_extrema(const std::vector<double>& x, const std::vector<double>& u,
                             std::pair<double, double> window, double k = 1.0);

// Closed forms, valid for small eps(1-d) and small phi.
BarrierFeatures analytic_double(double epsilon, double d, double k = 1.0);
BarrierFeatures analytic_triple(double phi, double k = 1.0);

struct FeatureError {
  std::string name;
  double numeric = 0.0;
  double analytic = 0.0;
  double error = 0.0;
};

struct FeatureComparison {
  bool mismatch = false;  // peak or dip counts differ
  std::size_t numeric_peaks = 0;
  std::size_t analytic_peaks = 0;
  std::size_t numeric_dips = 0;
  std::size_t analytic_dips = 0;
  std::vector<FeatureError> entries;
  double max_error = 0.0;

  double error_of(const std::string& name) const;
};

// Heights: |n - a| / a, or n / (largest analytic peak) when a = 0.
// Positions: |n - a| / |a - center| for off-center features, |n - a| / lambda
// for features at the center. Width: relative.
FeatureComparison compare(const BarrierFeatures& numeric, const BarrierFeatures& analytic);

}  // namespace darkpot
