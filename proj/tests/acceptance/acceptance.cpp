// Acceptance gate: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria (0 when all pass).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <fmt/core.h>

#include "cli_runner.hpp"
#include "darkpot/adiabatic.hpp"
#include "darkpot/bound_state.hpp"
#include "darkpot/design.hpp"
#include "darkpot/features.hpp"
#include "darkpot/hamiltonian.hpp"
#include "darkpot/potentials.hpp"
#include "darkpot/scan.hpp"

using namespace darkpot;

namespace {

constexpr double pi = std::numbers::pi;
constexpr double lambda = 2.0 * pi;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    notes.push_back((ok ? "" : "!") + what);
  }
};

bool within(double got, double want, double rel) { return std::abs(got - want) <= rel * std::abs(want); }

std::vector<double> sample(const Grid1D& g, const std::function<double(double)>& fn) {
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) v[i] = fn(g.point(i));
  return v;
}

// ---------------------------------------------------------------- 1 and 2

Outcome double_barrier_forms() {
  Outcome o;
  const double eps = 1.0 / 40;
  const auto p = double_barrier(eps);
  auto grid = make_grid(0.0, lambda, 20001, Boundary::Dirichlet);
  auto f = find_extrema(make_potential_grid(grid, p), {pi - 1.0, pi + 1.0});
  if (f.peaks.size() != 2 || f.dips.size() != 1) {
    o.check(false, fmt::format("found {} peaks, {} dips", f.peaks.size(), f.dips.size()));
    return o;
  }
  const double height = std::sqrt(27.0) / (8.0 * eps);
  const double offset = std::pow(4.0 / 3.0, 0.25) * std::sqrt(eps);
  const double top = std::max(f.peaks[0].value, f.peaks[1].value);
  for (int i = 0; i < 2; ++i)
    o.check(within(f.peaks[i].value, height, 0.05), fmt::format("peak{} {:.4g} vs {:.4g}", i, f.peaks[i].value, height));
  o.check(within(f.peaks[0].x, pi - offset, 0.05) && within(f.peaks[1].x, pi + offset, 0.05),
          fmt::format("kx {:.4f},{:.4f} vs pi-+{:.4f}", f.peaks[0].x, f.peaks[1].x, offset));
  o.check(f.dips[0].value <= 1e-8 * top, fmt::format("dip {:.2g}", f.dips[0].value));
  const double width = 0.2 * std::sqrt(eps) * lambda;
  o.check(within(f.well_width, width, 0.15),
          fmt::format("width {:.4f} vs {:.4f} ({:+.1f}%)", f.well_width, width, 100.0 * (f.well_width / width - 1.0)));
  return o;
}

Outcome triple_barrier_forms() {
  Outcome o;
  const double phi = 0.2;
  const double xc = pi - phi / 2.0;
  auto grid = make_grid(0.0, lambda, 40001, Boundary::Dirichlet);
  auto f = find_extrema(make_potential_grid(grid, triple_barrier(phi)), {pi - 0.5, pi + 0.3});
  if (f.peaks.size() != 3 || f.dips.size() != 2) {
    o.check(false, fmt::format("found {} peaks, {} dips", f.peaks.size(), f.dips.size()));
    return o;
  }
  const Extremum& mid = f.peaks[1];
  o.check(within(mid.value, 400.0, 0.10) && std::abs(mid.x - xc) <= 0.01,
          fmt::format("central {:.4g} at kx {:.4f}", mid.value, mid.x));
  for (int i = 0; i < 2; ++i) {
    const double want = xc + (i == 0 ? -1.0 : 1.0) * phi / 2.0;
    o.check(f.dips[i].value <= 1e-8 * mid.value && std::abs(f.dips[i].x - want) <= 0.01,
            fmt::format("dip{} {:.2g} at kx {:.4f}", i, f.dips[i].value, f.dips[i].x));
  }
  const double side = 0.5 * (f.peaks[0].value + f.peaks[2].value);
  o.check(within(mid.value / side, 1600.0 / 9.0, 0.10), fmt::format("ratio {:.2f} vs {:.2f}", mid.value / side, 1600.0 / 9.0));
  return o;
}

// ---------------------------------------------------------------- 3

Outcome pointwise_suite() {
  Outcome o;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ux(0.0, lambda), ud(-3.0, 3.0), ue(0.01, 0.3), udd(0.0, 0.9),
      uphi(0.05, 1.0);
  double worst_identity = 0.0, worst_residual = 0.0;
  int bound_violations = 0;
  for (int i = 0; i < 1000; ++i) {
    const FieldProfile p = (i % 2 == 0) ? double_barrier(ue(rng), udd(rng), uphi(rng)) : triple_barrier(uphi(rng));
    const double x = ux(rng);
    const double delta = ud(rng) * omega_norm(x, p);
    const double a = u0(x, p), b = u1(x, p);
    const auto es = eigensystem(x, p, delta);
    worst_residual = std::max(worst_residual, eigensystem_self_check(es, p));
    const auto [up, um] = bright_potentials(x, p, delta);
    const double c2 = 4.0 * es.c_factor * es.c_factor;
    for (auto [got, n] : {std::pair{up, es.n_plus}, std::pair{um, es.n_minus}}) {
      const double want = n * n * a + c2 * b;
      if (want > 0.0) worst_identity = std::max(worst_identity, std::abs(got - want) / want);
    }
    const auto od = off_diagonal(x, p, delta);
    const double slack = 1e-12 * (a + b);
    if (od.u_b > a / 2.0 + slack) ++bound_violations;
    const double lim = std::sqrt(a * b) / 2.0 + slack;
    if (std::abs(od.u0_plus) > lim || std::abs(od.u0_minus) > lim) ++bound_violations;
  }
  o.check(worst_identity <= 1e-10, fmt::format("U_a identity {:.1e}", worst_identity));
  o.check(bound_violations == 0, fmt::format("{} bound violations", bound_violations));
  o.check(worst_residual <= 1e-12, fmt::format("residual {:.1e}", worst_residual));

  // central differences of alpha and log Omega against the analytic derivatives
  double order = 10.0;
  for (const FieldProfile& p : {double_barrier(0.1, 0.4, 0.2), triple_barrier(0.5)}) {
    for (double x : {2.0, 2.9, 3.3, 4.0}) {
      auto err = [&](double h, auto&& f, double exact) {
        return std::abs((f(x + h) - f(x - h)) / (2.0 * h) - exact);
      };
      auto alpha = [&](double y) { return mixing_angle(y, p); };
      auto logo = [&](double y) { return std::log(omega_norm(y, p)); };
      order = std::min(order, std::log2(err(4e-3, alpha, alpha_prime(x, p)) / err(2e-3, alpha, alpha_prime(x, p))));
      order = std::min(order, std::log2(err(4e-3, logo, log_derivative(x, p)) / err(2e-3, logo, log_derivative(x, p))));
    }
  }
  o.check(order >= 1.9, fmt::format("FD order {:.3f}", order));
  return o;
}

// ---------------------------------------------------------------- 4

double box_ground(std::size_t n) {
  auto g = make_grid(0.0, 1.0, n, Boundary::Dirichlet);
  return lowest_eigenpairs(Hamiltonian1D(g, std::vector<double>(n, 0.0)).to_sparse()).energies[0];
}

Outcome solver_oracles() {
  Outcome o;
  const double box = box_ground(400);
  o.check(within(box, pi * pi, 0.005), fmt::format("box {:.3e} rel", box / (pi * pi) - 1.0));

  double osc = 0.0;
  for (double omega : {1.0, 25.0}) {
    const double half = 8.0 / std::sqrt(omega);
    auto g = make_grid(-half, half, 600, Boundary::Dirichlet);
    Hamiltonian1D h(g, sample(g, [&](double x) { return 0.5 * omega * omega * x * x; }), 4, 0.5);
    auto e = lowest_eigenpairs(h.to_sparse(), {.count = 4});
    for (int n = 0; n < 4; ++n) osc = std::max(osc, std::abs(e.energies[n] - (n + 0.5) * omega) / omega);
  }
  o.check(osc <= 1e-4, fmt::format("oscillator {:.1e} omega", osc));

  auto pair_axis = [](std::size_t n) {
    auto g = make_grid(0.0, lambda, n, Boundary::Dirichlet);
    auto p = double_barrier(0.1);
    return std::pair{Hamiltonian1D(g, sample(g, [&](double x) { return u0(x, p); })),
                      sample(g, [&](double x) { return moment_fraction(x, p); })};
  };
  {
    auto [axis, s] = pair_axis(80);
    Hamiltonian2D h2(axis, s, DipolarModel(0.0, 0.0, axis.grid().spacing()));
    const double e1 = lowest_eigenpairs(axis.to_sparse()).energies[0];
    const double e2 = lowest_eigenpairs(h2.to_sparse(0.0)).energies[0];
    o.check(within(e2, 2.0 * e1, 1e-8), fmt::format("separable {:.1e}", std::abs(e2 / (2.0 * e1) - 1.0)));
  }
  {
    auto [axis, s] = pair_axis(42);
    Hamiltonian2D h2(axis, s, DipolarModel(0.8, 0.1, axis.grid().spacing()));
    const SparseMatrix m = h2.to_sparse();
    const double dense = lowest_eigenpairs_dense(m).energies[0];
    const double iter = lowest_eigenpairs(m).energies[0];
    o.check(within(iter, dense, 1e-8), fmt::format("40x40 dense/iterative {:.1e}", std::abs(iter / dense - 1.0)));
  }
  return o;
}

// ---------------------------------------------------------------- 5, 6, 8

const std::vector<double> kEps{1.0 / 40, 1.0 / 20, 1.0 / 10};

const ScanResult& shared_scan() {
  static const ScanResult result = [] {
    ScanSettings st;
    st.epsilons = kEps;
    st.l_t_factors = {0.0, 0.1, 0.2};
    st.n = 200;
    st.threads = std::max(1u, std::thread::hardware_concurrency());
    return scan(st, AtomSpecies::ytterbium171());
  }();
  return result;
}

std::vector<const ScanRow*> rows_for(double l_t_factor) {
  std::vector<const ScanRow*> out;
  for (const auto& r : shared_scan().rows)
    if (r.l_t_factor == l_t_factor) out.push_back(&r);
  return out;
}

Outcome threshold_slopes() {
  Outcome o;
  const auto& res = shared_scan();
  for (const auto& r : res.rows) {
    if (!r.ok) o.check(false, fmt::format("cell eps={:.4f} lT={}: {}", r.epsilon, r.l_t_factor, r.error));
  }
  for (const ScanRow* r : rows_for(0.0)) {
    const double want = 0.55 * std::sqrt(r->epsilon);
    o.check(r->ok && within(r->a_dd_min, want, 0.20),
            fmt::format("a_min(eps={:.3f}) {:.4f} vs {:.4f} lambda", r->epsilon, r->a_dd_min, want));
  }
  const std::map<double, std::pair<double, double>> targets{{0.0, {1.2, 0.20}}, {0.1, {1.5, 0.25}}, {0.2, {3.0, 0.30}}};
  for (const auto& f : res.slopes) {
    const auto [want, tol] = targets.at(f.l_t_factor);
    o.check(f.points == kEps.size() && within(f.slope, want, tol),
            fmt::format("slope(lT={}) {:.3f} vs {} +-{:.0f}%", f.l_t_factor, f.slope, want, 100.0 * tol));
  }
  return o;
}

Outcome off_diagonal_and_lifetime() {
  Outcome o;
  for (const ScanRow* r : rows_for(0.1)) {
    if (!r->ok) {
      o.check(false, fmt::format("eps={:.4f} failed", r->epsilon));
      continue;
    }
    const double ratio = r->u_off / r->u0_peak;
    o.check(ratio <= 0.05, fmt::format("Uoff/U0max(eps={:.3f}) {:.3f}", r->epsilon, ratio));
    o.check(r->tau >= 0.1 && r->tau <= 10.0, fmt::format("tau(eps={:.3f}) {:.3g} s", r->epsilon, r->tau));
  }
  return o;
}

Outcome bound_state_geometry() {
  Outcome o;
  for (const auto& r : shared_scan().rows) {
    if (!r.ok) continue;
    o.check(r.one_in_one_out >= 0.70 && r.wall_density <= 0.05,
            fmt::format("eps={:.3f} lT={}: in/out {:.2f} wall {:.2f}", r.epsilon, r.l_t_factor, r.one_in_one_out,
                        r.wall_density));
  }
  return o;
}

// ---------------------------------------------------------------- 7

Outcome design_numbers() {
  Outcome o;
  const auto yb = AtomSpecies::ytterbium171();
  const double omega0 = 2.0 * pi * 100e6;
  const auto triple = design_minimum_spacing(yb, omega0, 0.2, BarrierKind::Triple);
  const auto dbl = design_minimum_spacing(yb, omega0, 0.2, BarrierKind::Double);
  o.check(within(triple.spacing_m, 24e-9, 0.15), fmt::format("triple spacing {:.2f} nm", triple.spacing_m * 1e9));
  o.check(within(dbl.e_min_hz, 280e3, 0.30), fmt::format("E_min/h {:.0f} kHz", dbl.e_min_hz * 1e-3));
  const double lo = std::min(dbl.peak_to_peak_m, dbl.half_max_width_m);
  const double hi = std::max(dbl.peak_to_peak_m, dbl.half_max_width_m);
  o.check(lo >= 10e-9 && hi <= 20e-9,
          fmt::format("double spacing {:.2f} (half-max) / {:.2f} (peak-to-peak) nm", dbl.half_max_width_m * 1e9,
                      dbl.peak_to_peak_m * 1e9));
  o.check(within(dbl.gamma_d_simple_hz, 7e3, 0.30),
          fmt::format("gamma_d/2pi {:.2f} kHz (P_B {:.2f}%)", dbl.gamma_d_simple_hz * 1e-3, 100.0 * dbl.p_b_simple));
  o.notes.push_back(fmt::format("bound P_B {:.3f}%, gamma_d/2pi {:.3f} kHz", 100.0 * dbl.p_b_bound,
                                dbl.gamma_d_bound_hz * 1e-3));
  return o;
}

// ---------------------------------------------------------------- 9

Outcome cli_determinism() {
  Outcome o;
  const std::map<std::string, std::string> configs{
      {"profile", R"({"command": "profile", "grid": {"n": 401},
                      "profiles": [{"kind": "double_barrier", "epsilon": 0.1}], "formats": ["csv", "json", "svg"]})"},
      {"potential", R"({"command": "potential", "grid": {"n": 401}, "delta": 0.5,
                        "profiles": [{"kind": "double_barrier", "epsilon": 0.1, "d": 0.4, "phi": 0.2},
                                     {"kind": "triple_barrier", "phi": 0.3}], "formats": ["csv", "json", "svg"]})"},
      {"features", R"({"command": "features", "grid": {"n": 4001},
                       "profiles": [{"kind": "double_barrier", "epsilon": 0.05},
                                    {"kind": "triple_barrier", "phi": 0.2}]})"},
      {"boundstate", R"({"command": "boundstate", "seed": 11,
                         "boundstate": {"epsilon": 0.1, "l_t_factor": 0.1, "a_dd": 0.3, "n": 60},
                         "formats": ["csv", "json", "svg"]})"},
      {"scan", R"({"command": "scan", "seed": 11, "threads": 2,
                   "scan": {"epsilons": [0.1], "l_t_factors": [0.0, 0.1], "n": 60}, "formats": ["csv", "json", "svg"]})"},
      {"experiment", R"({"command": "experiment", "omega0_mhz": 100.0})"},
  };
  testing::ScratchDir dir("acceptance");
  for (const auto& [name, text] : configs) {
    const auto cfg = dir / (name + ".cfg");
    testing::write_file(cfg, text);
    std::map<std::string, std::string> runs[2];
    bool ran = true;
    for (int k = 0; k < 2; ++k) {
      const auto out = dir / (name + std::to_string(k));
      const int code = testing::run_cli(DARKPOT_CLI_PATH, "--config '" + cfg.string() + "' --out '" + out.string() + "'",
                                        dir / (name + std::to_string(k) + ".log"));
      ran = ran && code == 0;
      if (code == 0) runs[k] = testing::snapshot(out);
    }
    o.check(ran && !runs[0].empty() && runs[0] == runs[1],
            fmt::format("{} {}", name, ran ? fmt::format("{} files", runs[0].size()) : "exit != 0"));
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double budget_s;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {1, "double-barrier closed forms", 1.0, double_barrier_forms},
      {2, "triple-barrier closed forms", 1.0, triple_barrier_forms},
      {3, "pointwise identities and bounds", 10.0, pointwise_suite},
      {4, "solver oracles", 30.0, solver_oracles},
      {5, "threshold dipolar length slopes", 900.0, threshold_slopes},
      {6, "off-diagonal coupling and lifetime", 900.0, off_diagonal_and_lifetime},
      {7, "experimental design numbers", 1.0, design_numbers},
      {8, "bound-state geometry", 900.0, bound_state_geometry},
      {9, "CLI determinism", 600.0, cli_determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.check(secs <= c.budget_s, fmt::format("{:.2f} s of {:.0f} s", secs, c.budget_s));
    failed += !o.pass;
    std::string detail;
    for (const auto& n : o.notes) detail += (detail.empty() ? "" : "; ") + n;
    fmt::print("{} {} {}: {}\n", o.pass ? "PASS" : "FAIL", c.id, c.title, detail);
    std::fflush(stdout);
  }
  return failed;
}
