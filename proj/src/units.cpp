#include "darkpot/units.hpp"

#include <cmath>
#include <utility>

#include "darkpot/constants.hpp"
#include "darkpot/errors.hpp"

namespace darkpot {

AtomSpecies::AtomSpecies(std::string name, double mass_kg, double gamma_rad_s,
                         double lambda_m, double mu_max_j_per_t)
    : name_(std::move(name)),
      mass_(mass_kg),
      gamma_(gamma_rad_s),
      lambda_(lambda_m),
      mu_max_(mu_max_j_per_t) {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(mass_) || !positive(gamma_) || !positive(lambda_) || !positive(mu_max_)) {
    throw InvalidInput("AtomSpecies '" + name_ + "': mass, gamma, lambda and mu_max must be > 0");
  }
}

double AtomSpecies::wavenumber() const { return 2.0 * constants::pi / lambda_; }

double AtomSpecies::recoil_energy() const {
  const double k = wavenumber();
  return constants::hbar * constants::hbar * k * k / (2.0 * mass_);
}

double AtomSpecies::recoil_frequency() const { return recoil_energy() / constants::hbar; }

AtomSpecies AtomSpecies::ytterbium171() {
  return AtomSpecies("Yb171", 171.0 * constants::atomic_mass_unit,
                     2.0 * constants::pi * 182e3, 532e-9,
                     0.4919 * constants::nuclear_magneton);
}

const char* to_string(QuantityKind kind) {
  switch (kind) {
    case QuantityKind::Length: return "length";
    case QuantityKind::Energy: return "energy";
    case QuantityKind::Frequency: return "frequency";
    case QuantityKind::Time: return "time";
  }
  return "unknown";
}

namespace {

// Multiplier taking an SI value of the given kind into reduced units.
double reduction_factor(QuantityKind kind, const AtomSpecies& s) {
  switch (kind) {
    case QuantityKind::Length: return s.wavenumber();
    case QuantityKind::Energy: return 1.0 / s.recoil_energy();
    case QuantityKind::Frequency: return 1.0 / s.recoil_frequency();
    case QuantityKind::Time: return s.recoil_frequency();
  }
  throw InvalidInput("unknown quantity kind");
}

}  // namespace

double si_to_reduced(SiQuantity q, QuantityKind kind, const AtomSpecies& species) {
  if (q.dimension != kind) {
    throw InvalidInput(std::string("dimension mismatch: got ") + to_string(q.dimension) +
                       ", expected " + to_string(kind));
  }
  return q.value * reduction_factor(kind, species);
}

SiQuantity reduced_to_si(double value, QuantityKind kind, const AtomSpecies& species) {
  return {value / reduction_factor(kind, species), kind};
}

double UnitSystem::to_internal(double value, QuantityKind kind) const {
  if (mode_ == UnitMode::Reduced) return value;
  return si_to_reduced({value, kind}, kind, *species_);
}

double UnitSystem::from_internal(double value, QuantityKind kind) const {
  if (mode_ == UnitMode::Reduced) return value;
  return reduced_to_si(value, kind, *species_).value;
}

}  // namespace darkpot
