#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "darkpot/bound_state.hpp"
#include "darkpot/units.hpp"

namespace darkpot {

struct ScanSettings {
  std::vector<double> epsilons;
  double d = 0.0;
  double phi = 0.0;
  // Transverse widths in units of sqrt(eps) lambda.
  std::vector<double> l_t_factors{0.0};
  WidthConvention width = WidthConvention::LT;
  std::size_t n = 200;
  int stencil_order = 2;
  double rel_tol = 1e-2;
  double omega0_rad_s = 2.0 * 3.14159265358979323846 * 100e6;
  OffDiagonalForm form = OffDiagonalForm::Symmetrized;
  std::uint64_t seed = 20240611;
  unsigned threads = 1;
};

struct ScanRow {
  double epsilon = 0.0;
  double d = 0.0;
  double l_t_factor = 0.0;
  double l_t = 0.0;           // wavelengths
  double a_dd_min = 0.0;      // wavelengths
  double a_dd_min_nm = 0.0;
  double x12 = 0.0;           // wavelengths
  double energy = 0.0;        // E_R at a_dd_min
  double u_off = 0.0;         // E_R, selected form
  double u_off_cross = 0.0;
  double u0_peak = 0.0;       // E_R
  double tau = 0.0;           // s, selected form
  double tau_cross = 0.0;
  double one_in_one_out = 0.0;
  double wall_density = 0.0;
  int solves = 0;
  bool ok = false;
  std::string error;
};

struct SlopeFit {
  double l_t_factor = 0.0;
  std::size_t points = 0;
  double slope = 0.0;        // least squares through the origin
  double slope_affine = 0.0; // ordinary least squares
  double intercept = 0.0;
};

struct ScanResult {
  std::vector<ScanRow> rows;     // sorted by (l_t_factor, epsilon)
  std::vector<SlopeFit> slopes;  // one per l_t factor
};

// Cells run in parallel; rows come back in a fixed order.
ScanResult scan(const ScanSettings& settings, const AtomSpecies& species);

// One cell, as used by scan.
ScanRow scan_cell(const ScanSettings& settings, const AtomSpecies& species, double epsilon,
                  double l_t_factor, BisectionResult* detail = nullptr);

SlopeFit fit_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace darkpot
