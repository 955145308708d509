#pragma once

#include <string>

namespace darkpot {

// Mass, linewidth, transition wavelength and maximum magnetic moment of a
// Lambda-type atom. Everything downstream works in recoil units derived from
// these: length 1/k, energy E_R = hbar^2 k^2 / 2m, hbar = 1.
class AtomSpecies {
 public:
  // Throws InvalidInput unless every field is strictly positive.
  AtomSpecies(std::string name, double mass_kg, double gamma_rad_s,
              double lambda_m, double mu_max_j_per_t);

  const std::string& name() const { return name_; }
  double mass() const { return mass_; }
  double gamma() const { return gamma_; }
  double lambda() const { return lambda_; }
  double mu_max() const { return mu_max_; }

  double wavenumber() const;       // k = 2 pi / lambda
  double recoil_energy() const;    // E_R in J
  double recoil_frequency() const; // E_R / hbar in rad/s

  // 171Yb on the 532 nm dark-state scheme, gamma = 2 pi x 182 kHz,
  // ground-state nuclear moment.
  static AtomSpecies ytterbium171();

 private:
  std::string name_;
  double mass_;
  double gamma_;
  double lambda_;
  double mu_max_;
};

enum class QuantityKind { Length, Energy, Frequency, Time };

const char* to_string(QuantityKind kind);

// A value tagged with the SI dimension it carries. Frequencies are angular
// (rad/s).
struct SiQuantity {
  double value;
  QuantityKind dimension;
};

inline SiQuantity meters(double v) { return {v, QuantityKind::Length}; }
inline SiQuantity joules(double v) { return {v, QuantityKind::Energy}; }
inline SiQuantity radians_per_second(double v) { return {v, QuantityKind::Frequency}; }
inline SiQuantity seconds(double v) { return {v, QuantityKind::Time}; }

// Throws InvalidInput when q.dimension differs from kind.
double si_to_reduced(SiQuantity q, QuantityKind kind, const AtomSpecies& species);
SiQuantity reduced_to_si(double value, QuantityKind kind, const AtomSpecies& species);

enum class UnitMode { Reduced, SI };

// Presentation unit system for I/O. Internal computation is always reduced.
class UnitSystem {
 public:
  static UnitSystem reduced() { return UnitSystem(UnitMode::Reduced, nullptr); }
  static UnitSystem si(const AtomSpecies& species) { return UnitSystem(UnitMode::SI, &species); }

  UnitMode mode() const { return mode_; }

  // Identity in reduced mode.
  double to_internal(double value, QuantityKind kind) const;
  double from_internal(double value, QuantityKind kind) const;

 private:
  UnitSystem(UnitMode mode, const AtomSpecies* species) : mode_(mode), species_(species) {}

  UnitMode mode_;
  const AtomSpecies* species_;
};

}  // namespace darkpot
