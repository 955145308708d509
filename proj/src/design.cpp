#include "darkpot/design.hpp"

#include <algorithm>
#include <cmath>

#include "darkpot/constants.hpp"
#include "darkpot/errors.hpp"
#include "darkpot/fields.hpp"
#include "darkpot/potentials.hpp"

namespace darkpot {

namespace {

double max_bound_excitation(const FieldProfile& p) {
  const std::size_t samples = 200000;
  const double period = p.period();
  double best = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double x = period * static_cast<double>(i) / static_cast<double>(samples);
    const double om = omega_norm(x, p);
    best = std::max(best, 0.25 * u0(x, p) * u1(x, p) / (om * om));
  }
  return best;
}

}  // namespace

DesignReport design_minimum_spacing(const AtomSpecies& species, double omega0_rad_s,
                                    double threshold, BarrierKind kind) {
  if (!(omega0_rad_s > 0.0) || !(threshold > 0.0)) {
    throw InvalidInput("design needs omega0 > 0 and threshold > 0");
  }
  DesignReport r;
  r.kind = kind;
  r.threshold = threshold;
  r.omega0 = si_to_reduced(radians_per_second(omega0_rad_s), QuantityKind::Frequency, species);
  const double k = species.wavenumber();
  const double lambda = species.lambda();

  FieldProfile designed = double_barrier(0.5);
  if (kind == BarrierKind::Double) {
    // sqrt(27) / (8u) = threshold * Omega0 * u
    const double u = std::sqrt(std::sqrt(27.0) / (8.0 * threshold * r.omega0));
    if (!(u < 1.0)) throw NumericalError("fields too weak: double barrier needs eps(1-d) >= 1");
    r.parameter = u;
    r.peak_u0 = std::sqrt(27.0) / (8.0 * u);
    r.omega_min = r.omega0 * u;
    r.peak_to_peak_m = 2.0 * std::pow(4.0 / 3.0, 0.25) * std::sqrt(u) / k;
    r.half_max_width_m = 0.2 * std::sqrt(u) * lambda;
    r.spacing_m = r.peak_to_peak_m;
    r.e_min_j = species.recoil_energy() / u;
    r.e_min_hz = r.e_min_j / constants::planck;
    designed = double_barrier(u, 0.0, 0.0, r.omega0);
  } else {
    // 16 / phi^2 = threshold * Omega0 * phi^2 / 2
    const double phi = std::pow(32.0 / (threshold * r.omega0), 0.25);
    if (!(phi < constants::pi)) throw NumericalError("fields too weak: triple barrier needs phi >= pi");
    r.parameter = phi;
    r.peak_u0 = 16.0 / (phi * phi);
    r.omega_min = 0.5 * r.omega0 * phi * phi;
    r.spacing_m = phi / k;
    r.peak_to_peak_m = r.spacing_m;
    r.half_max_width_m = r.spacing_m;
    designed = triple_barrier(phi, r.omega0);
  }
  r.p_b_simple = std::pow(r.peak_u0 / r.omega_min, 2);
  r.p_b_bound = max_bound_excitation(designed);
  r.gamma_d_simple_hz = species.gamma() * r.p_b_simple / (2.0 * constants::pi);
  r.gamma_d_bound_hz = species.gamma() * r.p_b_bound / (2.0 * constants::pi);
  return r;
}

}  // namespace darkpot
