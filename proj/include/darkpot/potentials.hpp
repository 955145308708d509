#pragma once

#include <utility>
#include <vector>

#include "darkpot/fields.hpp"
#include "darkpot/grid.hpp"

namespace darkpot {

// Pointwise non-adiabatic potentials in units of E_R (hbar^2 / 2m = 1 with
// lengths in 1/k).

// U0 = (hbar^2 / 2m) alpha'^2, felt by the dark state.
double u0(double x, const FieldProfile& p);
// U1 = (hbar^2 / 8m) (Omega'/Omega)^2; throws InvalidInput where Omega = 0.
double u1(double x, const FieldProfile& p);

// (U+, U-) with U_a = N_a^2 U0 + 4 C^2 U1.
std::pair<double, double> bright_potentials(double x, const FieldProfile& p, double delta = 0.0);

struct OffDiagonal {
  double u_b = 0.0;       // (hbar^2/2m) N+ N- alpha'^2
  double u0_plus = 0.0;   // +(hbar^2/2m) N- C alpha' Omega'/Omega
  double u0_minus = 0.0;  // -(hbar^2/2m) N+ C alpha' Omega'/Omega
  double v_plus_d = 0.0;  // |U0+| / hbar
  double v_minus_d = 0.0; // |U0-| / hbar
};

OffDiagonal off_diagonal(double x, const FieldProfile& p, double delta = 0.0);

// All scalar fields sampled on a grid.
struct PotentialGrid {
  explicit PotentialGrid(Grid1D g) : grid(std::move(g)) {}

  Grid1D grid;
  double delta = 0.0;
  std::vector<double> omega;
  std::vector<double> u0, u1, u_plus, u_minus, u_b, u0_plus, u0_minus;
  std::vector<double> v_plus_d, v_minus_d;
  std::vector<double> p_g1;
  // max(U0, U1) / min(|Omega+|, |Omega-|)
  std::vector<double> validity;
  // Filled by loss_estimates; empty until then. p_b / gamma_d use the bound
  // V_+-D <= 2|C| sqrt(U0 U1) / hbar.
  std::vector<double> p_b, p_b_exact, p_b_simple;
  std::vector<double> gamma_d, gamma_d_exact, gamma_d_simple;
};

PotentialGrid make_potential_grid(const Grid1D& grid, const FieldProfile& p, double delta = 0.0);

struct ValidityReport {
  double u0_ratio = 0.0;  // max_x U0 / hbar|Omega_+-|
  double u1_ratio = 0.0;
  double max_ratio = 0.0;
  double x_at_max = 0.0;
  double threshold = 0.2;
  bool pass = true;
};

// Born-Oppenheimer validity U_i / hbar|Omega_+-| <= threshold.
ValidityReport validity_check(const PotentialGrid& pg, double threshold = 0.2);

struct LossReport {
  double max_p_b = 0.0;        // bound 2|C| sqrt(U0 U1) for V_+-D
  double max_p_b_exact = 0.0;  // closed-form |U0+-|
  double max_p_b_simple = 0.0;  // (U0 / hbar Omega)^2
  // Detuning-independent worst case sqrt(U0 U1) / 2 (|C| = 1/4).
  double max_p_b_worst = 0.0;
  double max_gamma_d = 0.0;
  double max_gamma_d_exact = 0.0;
  double max_gamma_d_simple = 0.0;
  double max_gamma_d_worst = 0.0;
};

// Excitation probability P_B = V^2 / Omega^2 and dark-state loss
// gamma_d = gamma P_B. gamma in E_R/hbar.
LossReport loss_estimates(PotentialGrid& pg, double gamma);

}  // namespace darkpot
