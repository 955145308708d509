#pragma once

#include <numbers>

// CODATA 2018 values, SI units.
namespace darkpot::constants {

inline constexpr double pi = std::numbers::pi;
inline constexpr double planck = 6.62607015e-34;         // J s
inline constexpr double hbar = planck / (2.0 * pi);      // J s
inline constexpr double mu0 = 1.25663706212e-6;          // N A^-2
inline constexpr double atomic_mass_unit = 1.66053906660e-27;  // kg
inline constexpr double bohr_magneton = 9.2740100783e-24;      // J/T
inline constexpr double nuclear_magneton = 5.0507837461e-27;   // J/T

}  // namespace darkpot::constants
