#include "darkpot/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "darkpot/constants.hpp"

namespace darkpot {

SlopeFit fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  SlopeFit f;
  f.points = std::min(x.size(), y.size());
  if (f.points == 0) return f;
  double sxx = 0.0, sxy = 0.0, sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < f.points; ++i) {
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
    sx += x[i];
    sy += y[i];
  }
  f.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  const double n = static_cast<double>(f.points);
  const double det = n * sxx - sx * sx;
  if (f.points >= 2 && det > 0.0) {
    f.slope_affine = (n * sxy - sx * sy) / det;
    f.intercept = (sy - f.slope_affine * sx) / n;
  } else {
    f.slope_affine = f.slope;
  }
  return f;
}

ScanRow scan_cell(const ScanSettings& st, const AtomSpecies& species, double epsilon,
                  double l_t_factor, BisectionResult* detail) {
  const double lambda = 2.0 * constants::pi;
  ScanRow row;
  row.epsilon = epsilon;
  row.d = st.d;
  row.l_t_factor = l_t_factor;
  row.l_t = l_t_factor * std::sqrt(epsilon);
  try {
    BoundStateSettings bs;
    bs.epsilon = epsilon;
    bs.d = st.d;
    bs.phi = st.phi;
    bs.l_t = row.l_t * lambda;
    bs.width = st.width;
    bs.n = st.n;
    bs.stencil_order = st.stencil_order;
    bs.seed = st.seed;
    const BoundStateProblem problem(bs);
    BisectionOptions bo;
    bo.rel_tol = st.rel_tol;
    BisectionResult br = add_min_bisect(problem, bo);

    const double omega0 = si_to_reduced(radians_per_second(st.omega0_rad_s), QuantityKind::Frequency, species);
    const BoundStateObservables sel =
        problem.observables(br.state.psi, omega0, species.gamma(), st.form);
    const BoundStateObservables other = problem.observables(
        br.state.psi, omega0, species.gamma(),
        st.form == OffDiagonalForm::Symmetrized ? OffDiagonalForm::Cross : OffDiagonalForm::Symmetrized);
    const BoundStateObservables& cross = st.form == OffDiagonalForm::Cross ? sel : other;

    row.a_dd_min = br.a_dd_min / lambda;
    row.a_dd_min_nm = row.a_dd_min * species.lambda() * 1e9;
    row.x12 = sel.x12_mean / lambda;
    row.energy = br.state.energy;
    row.u_off = sel.u_off;
    row.u_off_cross = cross.u_off_cross;
    row.u0_peak = problem.u0_peak();
    row.tau = sel.tau;
    row.tau_cross = cross.tau;
    row.one_in_one_out = sel.one_in_one_out;
    row.wall_density = sel.wall_density;
    row.solves = static_cast<int>(br.evidence.size());
    row.ok = true;
    if (detail) *detail = std::move(br);
  } catch (const std::exception& e) {
    row.ok = false;
    row.error = e.what();
  }
  return row;
}

ScanResult scan(const ScanSettings& st, const AtomSpecies& species) {
  std::vector<double> eps = st.epsilons;
  std::sort(eps.begin(), eps.end());
  std::vector<double> lts = st.l_t_factors;

  struct Cell {
    double eps, lt;
  };
  std::vector<Cell> cells;
  for (double lt : lts) {
    for (double e : eps) cells.push_back({e, lt});
  }

  ScanResult out;
  out.rows.resize(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      out.rows[i] = scan_cell(st, species, cells[i].eps, cells[i].lt);
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(st.threads, static_cast<unsigned>(cells.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (double lt : lts) {
    std::vector<double> x, y;
    for (const auto& r : out.rows) {
      if (r.ok && r.l_t_factor == lt) {
        x.push_back(r.x12);
        y.push_back(r.a_dd_min);
      }
    }
    SlopeFit f = fit_slope(x, y);
    f.l_t_factor = lt;
    out.slopes.push_back(f);
  }
  return out;
}

}  // namespace darkpot
