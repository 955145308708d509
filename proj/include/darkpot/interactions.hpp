#pragma once

#include <ostream>
#include <vector>

#include "darkpot/fields.hpp"
#include "darkpot/units.hpp"

namespace darkpot {

// mu(x) = mu_max (2 P_g1(x) - 1) in J/T.
double magnetic_moment(double x, const FieldProfile& p, double mu_max);
// Same in units of mu_max: (1 - f^2) / (1 + f^2).
double moment_fraction(double x, const FieldProfile& p);

// a_dd = mu0 mu^2 m / (12 pi hbar^2), SI in and out.
double dipolar_length(double mu, const AtomSpecies& species);
double moment_for(double a_dd, const AtomSpecies& species);

// SI dipole-dipole energy for moments along z, clamped to the value at
// distance r_c (same direction) when r < r_c.
double v3d(double x12, double y12, double z12, double mu1, double mu2, double r_c);

// (r^2 - 3 z^2) / r^5, unit moments, no prefactor.
double dipole_kernel_3d(double x, double y, double z);

enum class WidthConvention { LT, Sqrt2LT };

const char* to_string(WidthConvention w);

// Transverse-averaged dipole kernel on the 1D axis, in reduced units:
//   K(x) = integral over rho of (r^2 - 3 z^2) / r^5 * exp(-rho^2/w^2) / (pi w^2)
// with w = l_T (or sqrt(2) l_T). Closed form, with u = |x| / w,
//   K(x) = [sqrt(pi) (1 + 2u^2) exp(u^2) erfc(u) - 2u] / w^3.
// For l_T = 0 the bare 1/|x|^3, clamped at r_c.
class DipolarModel {
 public:
  // a_dd, l_t, r_c in reduced lengths (1/k). r_c > 0 is required when l_t = 0.
  DipolarModel(double a_dd, double l_t, double r_c, WidthConvention width = WidthConvention::LT);

  double a_dd() const { return a_dd_; }
  double l_t() const { return l_t_; }
  double r_c() const { return r_c_; }
  WidthConvention width_convention() const { return width_; }
  double relative_width() const;

  // Same model with another dipolar length; shares the table.
  DipolarModel with_a_dd(double a_dd) const;

  // Direct kernel evaluation (no table).
  double kernel(double x) const;

  // Tabulate K on nodes 0, h, 2h, ..., >= x_max. Queries beyond x_max throw.
  void build_table(double x_max, double spacing);
  bool has_table() const { return !table_.empty(); }
  double table_range() const { return table_max_; }
  double table_spacing() const { return table_h_; }

  // Kernel through the table when built (cubic interpolation), else direct.
  double kernel_interpolated(double x) const;

  // V_eff / E_R = 6 a_dd s1 s2 K(x12), s = mu / mu_max.
  double effective_1d(double x12, double s1, double s2) const;

  void write_table_csv(std::ostream& out) const;

 private:
  double a_dd_;
  double l_t_;
  double r_c_;
  WidthConvention width_;
  std::vector<double> table_;
  double table_h_ = 0.0;
  double table_max_ = 0.0;
  // analytic continuation of K(|x|) to x = -spacing, for the first interval
  double table_ghost_ = 0.0;
};

// Scaled kernel w^3 K as a function of u = |x| / w, for w > 0.
double transverse_kernel_scaled(double u);

}  // namespace darkpot
