#pragma once

#include "darkpot/units.hpp"

namespace darkpot {

enum class BarrierKind { Double, Triple };

// Smallest barrier geometry compatible with U0 <= threshold * hbar Omega_min,
// using the closed-form peak heights and minimum Rabi frequencies
// (Omega_min = Omega0 eps(1-d) for the double barrier, Omega0 phi^2 / 2 for
// the triple barrier).
struct DesignReport {
  BarrierKind kind = BarrierKind::Double;
  double threshold = 0.2;
  double omega0 = 0.0;          // E_R / hbar
  double parameter = 0.0;       // eps(1-d) or phi
  double peak_u0 = 0.0;         // E_R
  double omega_min = 0.0;       // E_R / hbar
  // Double barrier: two candidate spacing measures. Triple: both equal phi/k.
  double peak_to_peak_m = 0.0;
  double half_max_width_m = 0.0;
  double spacing_m = 0.0;       // peak-to-peak (double) or dip-to-dip (triple)
  double e_min_j = 0.0;         // double barrier only
  double e_min_hz = 0.0;        // E_min / h
  double p_b_simple = 0.0;       // (U0 / hbar Omega)^2 at the design point
  double p_b_bound = 0.0;       // max_x U0 U1 / (2 hbar Omega)^2 on the designed profile
  double gamma_d_simple_hz = 0.0;  // gamma P_B / 2pi
  double gamma_d_bound_hz = 0.0;
};

// omega0 in rad/s. Throws NumericalError when no solution exists with
// eps(1-d) < 1 (double) or phi < pi (triple).
DesignReport design_minimum_spacing(const AtomSpecies& species, double omega0_rad_s,
                                    double threshold = 0.2,
                                    BarrierKind kind = BarrierKind::Double);

}  // namespace darkpot
