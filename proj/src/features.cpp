#include "darkpot/features.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "darkpot/constants.hpp"
#include "darkpot/errors.hpp"

namespace darkpot {

namespace {

constexpr double kPeakFloor = 1e-6;
constexpr double kZeroDip = 1e-8;

// Vertex of the parabola through (x[i-1], u[i-1]), (x[i], u[i]), (x[i+1], u[i+1])
// on a uniform grid.
Extremum refine(const std::vector<double>& x, const std::vector<double>& u, std::size_t i) {
  const double h = x[i + 1] - x[i];
  const double um = u[i - 1], u0 = u[i], up = u[i + 1];
  const double curv = um - 2.0 * u0 + up;
  if (curv == 0.0) return {x[i], u0};
  double t = 0.5 * (um - up) / curv;
  t = std::clamp(t, -1.0, 1.0);
  return {x[i] + t * h, u0 - 0.25 * (um - up) * t};
}

double crossing(const std::vector<double>& x, const std::vector<double>& u, std::size_t from,
                std::size_t to, double level) {
  // Walk from the dip towards the peak until u reaches level.
  const int step = to > from ? 1 : -1;
  for (std::size_t i = from; i != to; i += step) {
    const std::size_t j = i + step;
    if (u[j] >= level) {
      const double t = (level - u[i]) / (u[j] - u[i]);
      return x[i] + t * (x[j] - x[i]);
    }
  }
  return x[to];
}

void fill_derived(BarrierFeatures& f) {
  f.spacings.clear();
  f.asymmetry.clear();
  for (std::size_t i = 0; i + 1 < f.peaks.size(); ++i) {
    f.spacings.push_back(f.peaks[i + 1].x - f.peaks[i].x);
    f.asymmetry.push_back(f.peaks[i + 1].value / f.peaks[i].value);
  }
}

}  // namespace

BarrierFeatures find_extrema(const PotentialGrid& pg, std::pair<double, double> window) {
  // Potential grids live in reduced units, k = 1.
  return find_extrema(pg.grid.points(), pg.u0, window, 1.0);
}

BarrierFeatures find_extrema(const std::vector<double>& xs, const std::vector<double>& us,
                             std::pair<double, double> window, double k) {
  if (xs.size() != us.size()) throw InvalidInput("find_extrema: x and u sizes differ");
  std::vector<double> x, u;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] >= window.first && xs[i] <= window.second) {
      x.push_back(xs[i]);
      u.push_back(us[i]);
    }
  }
  if (x.size() < 3) throw InvalidInput("find_extrema: window holds fewer than 3 samples");

  BarrierFeatures f;
  f.wavelength = 2.0 * constants::pi / k;
  f.center = std::numeric_limits<double>::quiet_NaN();
  const double umax = *std::max_element(u.begin(), u.end());
  if (!(umax > 0.0)) return f;

  std::vector<std::size_t> peak_idx;
  for (std::size_t i = 1; i + 1 < x.size(); ++i) {
    if (u[i] > u[i - 1] && u[i] >= u[i + 1] && u[i] > kPeakFloor * umax) {
      peak_idx.push_back(i);
      f.peaks.push_back(refine(x, u, i));
    }
  }

  std::size_t deepest = 0;
  std::vector<std::size_t> dip_idx;
  for (std::size_t p = 0; p + 1 < peak_idx.size(); ++p) {
    const auto first = u.begin() + static_cast<std::ptrdiff_t>(peak_idx[p]);
    const auto last = u.begin() + static_cast<std::ptrdiff_t>(peak_idx[p + 1]) + 1;
    const std::size_t i = static_cast<std::size_t>(std::min_element(first, last) - u.begin());
    Extremum e = refine(x, u, i);
    if (e.value < kZeroDip * umax) e.value = 0.0;
    if (dip_idx.empty() || u[i] < u[dip_idx[deepest]]) deepest = dip_idx.size();
    dip_idx.push_back(i);
    f.dips.push_back(e);
  }

  if (!dip_idx.empty()) {
    const std::size_t di = dip_idx[deepest];
    const std::size_t left = peak_idx[deepest];
    const std::size_t right = peak_idx[deepest + 1];
    const double level = 0.5 * std::min(u[left], u[right]);
    f.well_width = crossing(x, u, di, right, level) - crossing(x, u, di, left, level);
  }
  fill_derived(f);
  return f;
}

BarrierFeatures analytic_double(double epsilon, double d, double k) {
  if (!(epsilon > 0.0) || d < 0.0 || d > 1.0) {
    throw InvalidInput("analytic_double needs eps > 0 and 0 <= d <= 1");
  }
  const double u = epsilon * (1.0 - d);
  BarrierFeatures f;
  f.wavelength = 2.0 * constants::pi / k;
  f.center = constants::pi / k;
  f.out_of_regime = !(u > 0.0) || u > 0.05;
  const double offset = std::pow(4.0 / 3.0, 0.25) * std::sqrt(u) / k;
  const double height = u > 0.0 ? std::sqrt(27.0) / (8.0 * u) : std::numeric_limits<double>::infinity();
  f.peaks = {{f.center - offset, height}, {f.center + offset, height}};
  f.dips = {{f.center, 0.0}};
  f.well_width = 0.2 * std::sqrt(u) * f.wavelength;
  fill_derived(f);
  return f;
}

BarrierFeatures analytic_triple(double phi, double k) {
  if (!(phi > 0.0) || !(phi < constants::pi)) throw InvalidInput("analytic_triple needs 0 < phi < pi");
  BarrierFeatures f;
  f.wavelength = 2.0 * constants::pi / k;
  f.center = (constants::pi - 0.5 * phi) / k;
  f.out_of_regime = phi > 0.5;
  const double central = 16.0 / (phi * phi);
  const double side = 0.09 / (phi * phi);
  const double s = phi / k;
  f.peaks = {{f.center - s, side}, {f.center, central}, {f.center + s, side}};
  f.dips = {{f.center - 0.5 * s, 0.0}, {f.center + 0.5 * s, 0.0}};
  // The inner well of the triple barrier lies between a side peak and the
  // central peak; its half-max width at the side-peak level is not part of the
  // closed forms.
  f.well_width = 0.0;
  fill_derived(f);
  return f;
}

double FeatureComparison::error_of(const std::string& name) const {
  for (const auto& e : entries) {
    if (e.name == name) return e.error;
  }
  throw InvalidInput("no feature named " + name);
}

FeatureComparison compare(const BarrierFeatures& numeric, const BarrierFeatures& analytic) {
  FeatureComparison r;
  r.numeric_peaks = numeric.peaks.size();
  r.analytic_peaks = analytic.peaks.size();
  r.numeric_dips = numeric.dips.size();
  r.analytic_dips = analytic.dips.size();
  r.mismatch = r.numeric_peaks != r.analytic_peaks || r.numeric_dips != r.analytic_dips;
  if (r.mismatch) return r;

  double top = 0.0;
  for (const auto& p : analytic.peaks) top = std::max(top, p.value);
  const double lambda = analytic.wavelength > 0.0 ? analytic.wavelength : 2.0 * constants::pi;
  const bool has_center = std::isfinite(analytic.center);

  auto add = [&](std::string name, double n, double a, double err) {
    r.entries.push_back({std::move(name), n, a, err});
    r.max_error = std::max(r.max_error, err);
  };
  auto position_error = [&](double n, double a) {
    const double offset = has_center ? std::abs(a - analytic.center) : 0.0;
    if (offset > 1e-12 * lambda) return std::abs(n - a) / offset;
    return std::abs(n - a) / lambda;
  };
  auto value_error = [&](double n, double a) {
    if (a != 0.0) return std::abs(n - a) / std::abs(a);
    return top > 0.0 ? std::abs(n) / top : std::abs(n);
  };

  for (std::size_t i = 0; i < analytic.peaks.size(); ++i) {
    const auto& n = numeric.peaks[i];
    const auto& a = analytic.peaks[i];
    const std::string tag = "peak" + std::to_string(i);
    add(tag + ".x", n.x, a.x, position_error(n.x, a.x));
    add(tag + ".value", n.value, a.value, value_error(n.value, a.value));
  }
  for (std::size_t i = 0; i < analytic.dips.size(); ++i) {
    const auto& n = numeric.dips[i];
    const auto& a = analytic.dips[i];
    const std::string tag = "dip" + std::to_string(i);
    add(tag + ".x", n.x, a.x, position_error(n.x, a.x));
    add(tag + ".value", n.value, a.value, value_error(n.value, a.value));
  }
  if (analytic.well_width > 0.0) {
    add("well_width", numeric.well_width, analytic.well_width,
        std::abs(numeric.well_width - analytic.well_width) / analytic.well_width);
  }
  return r;
}

}  // namespace darkpot
