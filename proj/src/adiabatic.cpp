#include "darkpot/adiabatic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "darkpot/errors.hpp"

namespace darkpot {

Eigen::Matrix3d internal_hamiltonian(double x, const FieldProfile& p, double delta) {
  const double oc = p.coupling(x);
  const double op = p.probe(x);
  Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
  h(2, 2) = -delta;
  h(2, 0) = h(0, 2) = 0.5 * oc;
  h(2, 1) = h(1, 2) = 0.5 * op;
  return h;
}

InternalEigensystem eigensystem(double x, const FieldProfile& p, double delta) {
  double oc = p.coupling(x);
  double op = p.probe(x);
  const double omega = std::hypot(oc, op);
  if (!(omega > 0.0)) {
    throw NumericalError("internal eigensystem degenerate: Omega = 0 at kx = " +
                         std::to_string(p.k() * x));
  }
  InternalEigensystem es;
  es.x = x;
  es.delta = delta;
  es.omega = omega;
  const double root = std::hypot(omega, delta);
  es.omega_plus = -delta + root;
  es.omega_minus = -delta - root;
  // Avoid cancellation in the smaller root: Omega_+ Omega_- = -Omega^2.
  if (delta > 0.0) es.omega_plus = omega * omega / (delta + root);
  if (delta < 0.0) es.omega_minus = -omega * omega / (-delta + root);
  es.energy_plus = 0.5 * es.omega_plus;
  es.energy_minus = 0.5 * es.omega_minus;

  const double sign = oc < 0.0 ? -1.0 : 1.0;
  es.dark = {-sign * op / omega, sign * oc / omega, 0.0};

  auto bright = [&](double om) {
    const double norm = std::hypot(omega, om);
    return std::array<double, 3>{oc / norm, op / norm, om / norm};
  };
  es.bright_plus = bright(es.omega_plus);
  es.bright_minus = bright(es.omega_minus);
  es.n_plus = omega / std::hypot(omega, es.omega_plus);
  es.n_minus = omega / std::hypot(omega, es.omega_minus);
  es.c_factor = 0.5 * delta * omega / (delta * delta + omega * omega);
  return es;
}

double eigensystem_self_check(const InternalEigensystem& es, const FieldProfile& p) {
  const Eigen::Matrix3d h = internal_hamiltonian(es.x, p, es.delta);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(h);
  Eigen::Vector3d closed(es.energy_minus, es.energy_dark, es.energy_plus);
  std::sort(closed.data(), closed.data() + 3);
  double worst = (solver.eigenvalues() - closed).cwiseAbs().maxCoeff();

  auto residual = [&](const std::array<double, 3>& v, double e) {
    const Eigen::Vector3d vec(v[0], v[1], v[2]);
    return (h * vec - e * vec).norm();
  };
  worst = std::max(worst, residual(es.dark, es.energy_dark));
  worst = std::max(worst, residual(es.bright_plus, es.energy_plus));
  worst = std::max(worst, residual(es.bright_minus, es.energy_minus));
  return worst;
}

double population_g1(double x, const FieldProfile& p) {
  const double oc = p.coupling(x);
  const double op = p.probe(x);
  const double omega2 = oc * oc + op * op;
  if (omega2 > 0.0) return op * op / omega2;
  const double f = ratio(x, p);
  return std::isinf(f) ? 0.0 : 1.0 / (1.0 + f * f);
}

double dark_energy_gap(double x, const FieldProfile& p, double delta) {
  const InternalEigensystem es = eigensystem(x, p, delta);
  return 0.5 * std::min(std::abs(es.omega_plus), std::abs(es.omega_minus));
}

}  // namespace darkpot
