#include "darkpot/bound_state.hpp"

#include <algorithm>
#include <cmath>

#include "darkpot/adiabatic.hpp"
#include "darkpot/constants.hpp"
#include "darkpot/errors.hpp"
#include "darkpot/features.hpp"
#include "darkpot/potentials.hpp"

namespace darkpot {

const char* to_string(OffDiagonalForm f) {
  return f == OffDiagonalForm::Symmetrized ? "symmetrized" : "cross";
}

namespace {

constexpr double kWallBand = 0.02;  // in wavelengths

}  // namespace

BoundStateProblem::BoundStateProblem(const BoundStateSettings& s)
    : settings_(s),
      grid_(0.0, 2.0 * constants::pi, s.n, Boundary::Dirichlet),
      profile_(double_barrier(s.epsilon, s.d, s.phi)) {
  const std::size_t n = grid_.size();
  u0_.resize(n);
  u1_.resize(n);
  s_.resize(n);
  omega_shape_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = grid_.point(i);
    u0_[i] = darkpot::u0(x, profile_);
    u1_[i] = darkpot::u1(x, profile_);
    s_[i] = moment_fraction(x, profile_);
    omega_shape_[i] = omega_norm(x, profile_);
  }
  u0_peak_ = *std::max_element(u0_.begin(), u0_.end());

  const BarrierFeatures f = find_extrema(grid_.points(), u0_, {grid_.x_min(), grid_.x_max()});
  if (f.dips.empty()) throw NumericalError("double-barrier profile has no well on this grid");
  std::size_t best = 0;
  for (std::size_t i = 1; i < f.dips.size(); ++i) {
    if (f.dips[i].value < f.dips[best].value ||
        (f.dips[i].value == f.dips[best].value &&
         std::abs(f.dips[i].x - constants::pi) < std::abs(f.dips[best].x - constants::pi))) {
      best = i;
    }
  }
  peaks_ = {f.peaks[best].x, f.peaks[best + 1].x};

  for (std::size_t i = 0; i + 1 < n; ++i) {
    if ((s_[i] > 0.0) != (s_[i + 1] > 0.0)) {
      const double t = s_[i] / (s_[i] - s_[i + 1]);
      walls_.push_back(grid_.point(i) + t * grid_.spacing());
    }
  }

  const double h = grid_.spacing();
  DipolarModel model(1.0, s.l_t, s.r_c > 0.0 ? s.r_c : h, s.width);
  model.build_table(grid_.x_max() - grid_.x_min(), h);
  const Hamiltonian1D axis(grid_, u0_, s.stencil_order);
  h2_ = std::make_unique<Hamiltonian2D>(axis, s_, model);
}

BoundStateResult BoundStateProblem::solve(double a_dd, const Eigen::VectorXd* warm) const {
  EigenOptions opt;
  opt.tol = settings_.tol;
  opt.seed = settings_.seed;
  opt.start = warm;
  const EigenPairs pairs = lowest_eigenpairs(h2_->to_sparse(a_dd), opt);
  BoundStateResult r;
  r.a_dd = a_dd;
  r.energy = pairs.energies.front();
  r.psi = pairs.vectors.front();
  r.residual = pairs.residuals.front();
  r.converged = true;
  r.bound = r.energy < 0.0;
  return r;
}

BoundStateObservables BoundStateProblem::observables(const Eigen::VectorXd& psi, double omega0_reduced,
                                                     double gamma_rad_s, OffDiagonalForm form) const {
  const std::size_t m = interior();
  if (static_cast<std::size_t>(psi.size()) != m * m) throw InvalidInput("psi does not match the grid");
  if (!(omega0_reduced > 0.0) || gamma_rad_s < 0.0) throw InvalidInput("need omega0 > 0 and gamma >= 0");

  std::vector<double> x(m), g(m), pb(m), root_u0(m), root_u1(m), pb_u0(m);
  std::vector<bool> inside(m), near_wall(m);
  const double lambda = 2.0 * constants::pi;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t k = i + 1;
    x[i] = grid_.point(k);
    const double om = omega0_reduced * omega_shape_[k];
    g[i] = 0.5 * std::sqrt(u0_[k] * u1_[k]);
    pb[i] = u0_[k] * u1_[k] / (4.0 * om * om);
    root_u0[i] = std::sqrt(u0_[k]);
    root_u1[i] = std::sqrt(u1_[k]);
    pb_u0[i] = u0_[k] / (4.0 * om * om);
    inside[i] = x[i] > peaks_.first && x[i] < peaks_.second;
    near_wall[i] = std::any_of(walls_.begin(), walls_.end(),
                               [&](double w) { return std::abs(x[i] - w) <= kWallBand * lambda; });
  }

  BoundStateObservables o;
  double norm = 0.0, peak = 0.0, wall_peak = 0.0, sym_pb = 0.0, cross_pb = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double p = psi[static_cast<Eigen::Index>(i * m + j)] * psi[static_cast<Eigen::Index>(i * m + j)];
      norm += p;
      o.x12_mean += std::abs(x[i] - x[j]) * p;
      o.u_off_symmetrized += 0.5 * (g[i] + g[j]) * p;
      o.u_off_cross += 0.5 * root_u0[i] * root_u1[j] * p;
      sym_pb += 0.5 * (pb[i] + pb[j]) * p;
      cross_pb += pb_u0[i] * u1_[j + 1] * p;
      if (inside[i] != inside[j]) o.one_in_one_out += p;
      peak = std::max(peak, p);
      if (near_wall[i] || near_wall[j]) wall_peak = std::max(wall_peak, p);
    }
  }
  if (!(norm > 0.0)) throw InvalidInput("psi is zero");
  o.x12_mean /= norm;
  o.u_off_symmetrized /= norm;
  o.u_off_cross /= norm;
  o.one_in_one_out /= norm;
  sym_pb /= norm;
  cross_pb /= norm;
  o.wall_density = peak > 0.0 ? wall_peak / peak : 0.0;
  const bool sym = form == OffDiagonalForm::Symmetrized;
  o.u_off = sym ? o.u_off_symmetrized : o.u_off_cross;
  o.p_b_mean = sym ? sym_pb : cross_pb;
  o.gamma_d_bar = gamma_rad_s * o.p_b_mean;
  o.tau = o.gamma_d_bar > 0.0 ? 1.0 / o.gamma_d_bar : std::numeric_limits<double>::infinity();
  return o;
}

BisectionResult add_min_bisect(const BoundStateProblem& problem, const BisectionOptions& opt) {
  if (!(opt.rel_tol > 0.0)) throw InvalidInput("bisection tolerance must be > 0");
  const BoundStateSettings& s = problem.settings();
  const double start = opt.a_start > 0.0
                           ? opt.a_start
                           : 0.55 * std::sqrt(s.epsilon * (1.0 - s.d)) * 2.0 * constants::pi;
  const double cap = opt.cap_factor * start;

  BisectionResult r;
  BoundStateResult lo = problem.solve(0.0);
  r.evidence.push_back({0.0, lo.energy});
  if (lo.energy < 0.0) throw NumericalError("ground state is already bound without interaction");

  double a_lo = 0.0, a_hi = start;
  BoundStateResult hi = problem.solve(a_hi, &lo.psi);
  r.evidence.push_back({a_hi, hi.energy});
  while (hi.energy >= 0.0) {
    a_lo = a_hi;
    lo = hi;
    a_hi *= 2.0;
    if (a_hi > cap) throw NumericalError("no bound state in range (a_dd up to cap)");
    hi = problem.solve(a_hi, &lo.psi);
    r.evidence.push_back({a_hi, hi.energy});
  }

  while ((a_hi - a_lo) > opt.rel_tol * a_hi) {
    const double mid = 0.5 * (a_lo + a_hi);
    BoundStateResult m = problem.solve(mid, &hi.psi);
    r.evidence.push_back({mid, m.energy});
    if (m.energy < 0.0) {
      a_hi = mid;
      hi = std::move(m);
    } else {
      a_lo = mid;
      lo = std::move(m);
    }
  }
  r.a_lo = a_lo;
  r.a_hi = a_hi;
  r.e_lo = lo.energy;
  r.e_hi = hi.energy;
  r.a_dd_min = a_hi;
  r.state = std::move(hi);
  return r;
}

}  // namespace darkpot
