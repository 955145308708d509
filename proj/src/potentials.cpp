#include "darkpot/potentials.hpp"

#include <algorithm>
#include <cmath>

#include "darkpot/adiabatic.hpp"
#include "darkpot/errors.hpp"

namespace darkpot {

double u0(double x, const FieldProfile& p) {
  const double ap = alpha_prime(x, p);
  return ap * ap;
}

double u1(double x, const FieldProfile& p) {
  const double ld = log_derivative(x, p);
  return 0.25 * ld * ld;
}

std::pair<double, double> bright_potentials(double x, const FieldProfile& p, double delta) {
  const InternalEigensystem es = eigensystem(x, p, delta);
  const double a = u0(x, p);
  const double b = u1(x, p);
  const double c2 = 4.0 * es.c_factor * es.c_factor;
  return {es.n_plus * es.n_plus * a + c2 * b, es.n_minus * es.n_minus * a + c2 * b};
}

OffDiagonal off_diagonal(double x, const FieldProfile& p, double delta) {
  const InternalEigensystem es = eigensystem(x, p, delta);
  const double ap = alpha_prime(x, p);
  const double ld = log_derivative(x, p);
  OffDiagonal out;
  out.u_b = es.n_plus * es.n_minus * ap * ap;
  out.u0_plus = es.n_minus * es.c_factor * ap * ld;
  out.u0_minus = -es.n_plus * es.c_factor * ap * ld;
  out.v_plus_d = std::abs(out.u0_plus);
  out.v_minus_d = std::abs(out.u0_minus);
  return out;
}

PotentialGrid make_potential_grid(const Grid1D& grid, const FieldProfile& p, double delta) {
  PotentialGrid pg(grid);
  pg.delta = delta;
  const std::size_t n = grid.size();
  for (auto* v : {&pg.omega, &pg.u0, &pg.u1, &pg.u_plus, &pg.u_minus, &pg.u_b, &pg.u0_plus,
                  &pg.u0_minus, &pg.v_plus_d, &pg.v_minus_d, &pg.p_g1, &pg.validity}) {
    v->resize(n);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double x = grid.point(i);
    const InternalEigensystem es = eigensystem(x, p, delta);
    const double ap = alpha_prime(x, p);
    const double ld = log_derivative(x, p);
    const double a = ap * ap;
    const double b = 0.25 * ld * ld;
    const double c2 = 4.0 * es.c_factor * es.c_factor;
    pg.omega[i] = es.omega;
    pg.u0[i] = a;
    pg.u1[i] = b;
    pg.u_plus[i] = es.n_plus * es.n_plus * a + c2 * b;
    pg.u_minus[i] = es.n_minus * es.n_minus * a + c2 * b;
    pg.u_b[i] = es.n_plus * es.n_minus * a;
    pg.u0_plus[i] = es.n_minus * es.c_factor * ap * ld;
    pg.u0_minus[i] = -es.n_plus * es.c_factor * ap * ld;
    pg.v_plus_d[i] = std::abs(pg.u0_plus[i]);
    pg.v_minus_d[i] = std::abs(pg.u0_minus[i]);
    pg.p_g1[i] = population_g1(x, p);
    const double gap = std::min(std::abs(es.omega_plus), std::abs(es.omega_minus));
    pg.validity[i] = std::max(a, b) / gap;
  }
  return pg;
}

ValidityReport validity_check(const PotentialGrid& pg, double threshold) {
  if (pg.u0.empty()) throw InvalidInput("validity_check needs a populated potential grid");
  ValidityReport r;
  r.threshold = threshold;
  for (std::size_t i = 0; i < pg.u0.size(); ++i) {
    const double om = pg.omega[i];
    const double root = std::hypot(om, pg.delta);
    const double gap = std::min(std::abs(-pg.delta + root), std::abs(-pg.delta - root));
    const double q0 = pg.u0[i] / gap;
    const double q1 = pg.u1[i] / gap;
    r.u0_ratio = std::max(r.u0_ratio, q0);
    r.u1_ratio = std::max(r.u1_ratio, q1);
    if (std::max(q0, q1) > r.max_ratio) {
      r.max_ratio = std::max(q0, q1);
      r.x_at_max = pg.grid.point(i);
    }
  }
  // Relative slack so a profile designed exactly at the threshold passes.
  r.pass = r.max_ratio <= threshold * (1.0 + 1e-9);
  return r;
}

LossReport loss_estimates(PotentialGrid& pg, double gamma) {
  const std::size_t n = pg.u0.size();
  for (auto* v : {&pg.p_b, &pg.p_b_exact, &pg.p_b_simple, &pg.gamma_d, &pg.gamma_d_exact,
                  &pg.gamma_d_simple}) {
    v->assign(n, 0.0);
  }
  LossReport r;
  for (std::size_t i = 0; i < n; ++i) {
    const double om = pg.omega[i];
    const double om2 = om * om;
    const double c = 0.5 * pg.delta * om / (pg.delta * pg.delta + om2);
    const double root = std::sqrt(pg.u0[i] * pg.u1[i]);
    const double v_exact = std::max(pg.v_plus_d[i], pg.v_minus_d[i]);
    const double v_bound = 2.0 * std::abs(c) * root;
    pg.p_b[i] = v_bound * v_bound / om2;
    pg.p_b_exact[i] = v_exact * v_exact / om2;
    pg.p_b_simple[i] = pg.u0[i] * pg.u0[i] / om2;
    pg.gamma_d[i] = gamma * pg.p_b[i];
    pg.gamma_d_exact[i] = gamma * pg.p_b_exact[i];
    pg.gamma_d_simple[i] = gamma * pg.p_b_simple[i];
    r.max_p_b = std::max(r.max_p_b, pg.p_b[i]);
    r.max_p_b_exact = std::max(r.max_p_b_exact, pg.p_b_exact[i]);
    r.max_p_b_simple = std::max(r.max_p_b_simple, pg.p_b_simple[i]);
    r.max_p_b_worst = std::max(r.max_p_b_worst, 0.25 * root * root / om2);
  }
  r.max_gamma_d = gamma * r.max_p_b;
  r.max_gamma_d_exact = gamma * r.max_p_b_exact;
  r.max_gamma_d_simple = gamma * r.max_p_b_simple;
  r.max_gamma_d_worst = gamma * r.max_p_b_worst;
  return r;
}

}  // namespace darkpot
