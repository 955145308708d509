#pragma once

#include <array>

#include <Eigen/Dense>

#include "darkpot/fields.hpp"

namespace darkpot {

// Closed-form eigensystem of the Lambda-scheme internal Hamiltonian at one
// position. Basis order is {g1, g2, e}; energies are in units of E_R (hbar = 1)
// and the detuning in E_R/hbar.
struct InternalEigensystem {
  double x = 0.0;
  double delta = 0.0;
  double omega = 0.0;        // sqrt(Omega_c^2 + Omega_p^2)
  double omega_plus = 0.0;   // -Delta + sqrt(Omega^2 + Delta^2)
  double omega_minus = 0.0;  // -Delta - sqrt(Omega^2 + Delta^2)
  std::array<double, 3> dark{};
  std::array<double, 3> bright_plus{};
  std::array<double, 3> bright_minus{};
  double energy_dark = 0.0;
  double energy_plus = 0.0;   // omega_plus / 2
  double energy_minus = 0.0;  // omega_minus / 2
  double n_plus = 0.0;        // 1 / sqrt(1 + Omega_+^2 / Omega^2)
  double n_minus = 0.0;
  double c_factor = 0.0;      // (Delta Omega / 2) / (Delta^2 + Omega^2)
};

// H_in = -Delta |e><e| + [Omega_c/2 |e><g1| + Omega_p/2 |e><g2| + h.c.]
Eigen::Matrix3d internal_hamiltonian(double x, const FieldProfile& p, double delta);

// Throws NumericalError where Omega(x) = 0 (degenerate dark/bright split).
// The dark state's g2 amplitude is non-negative.
InternalEigensystem eigensystem(double x, const FieldProfile& p, double delta = 0.0);

// Largest deviation between the closed form and a numerical diagonalization
// of internal_hamiltonian: eigenvalue mismatch and eigenvector residuals.
double eigensystem_self_check(const InternalEigensystem& es, const FieldProfile& p);

// |<g1|D>|^2 = 1 / (1 + f^2); zero at poles of f.
double population_g1(double x, const FieldProfile& p);

// min(|Omega_+|, |Omega_-|) / 2, the distance from the dark level to the
// nearest bright level.
double dark_energy_gap(double x, const FieldProfile& p, double delta = 0.0);

}  // namespace darkpot
