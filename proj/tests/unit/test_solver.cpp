#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "doctest.h"

#include "darkpot/bound_state.hpp"
#include "darkpot/errors.hpp"
#include "darkpot/hamiltonian.hpp"
#include "darkpot/lanczos.hpp"
#include "darkpot/potentials.hpp"
#include "darkpot/scan.hpp"

using namespace darkpot;

namespace {

constexpr double pi = std::numbers::pi;

std::vector<double> sample(const Grid1D& g, auto&& fn) {
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) v[i] = fn(g.point(i));
  return v;
}

double box_ground(std::size_t n, int order) {
  auto g = make_grid(0.0, 1.0, n, Boundary::Dirichlet);
  Hamiltonian1D h(g, std::vector<double>(n, 0.0), order);
  return lowest_eigenpairs(h.to_sparse()).energies[0];
}

// Double barrier on one period, Dirichlet, with its moment profile.
struct SmallPair {
  Hamiltonian1D axis;
  std::vector<double> s;
};

SmallPair small_pair(std::size_t n, double eps) {
  auto g = make_grid(0.0, 2.0 * pi, n, Boundary::Dirichlet);
  auto p = double_barrier(eps);
  return {Hamiltonian1D(g, sample(g, [&](double x) { return u0(x, p); })),
          sample(g, [&](double x) { return moment_fraction(x, p); })};
}

}  // namespace

TEST_CASE("particle in a box") {
  const double exact = pi * pi;  // -d^2/dx^2 on [0, 1]
  CHECK(box_ground(400, 2) == doctest::Approx(exact).epsilon(0.005));
  CHECK(std::abs(box_ground(400, 4) - exact) < std::abs(box_ground(400, 2) - exact));

  auto g = make_grid(0.0, 1.0, 400, Boundary::Dirichlet);
  Hamiltonian1D h(g, std::vector<double>(400, 0.0));
  auto e = lowest_eigenpairs(h.to_sparse(), {.count = 4});
  for (int k = 0; k < 4; ++k)
    CHECK(e.energies[k] == doctest::Approx(exact * (k + 1) * (k + 1)).epsilon(0.005));
}

TEST_CASE("second-order stencil converges at order two") {
  const double exact = pi * pi;
  const double e1 = std::abs(box_ground(101, 2) - exact);
  const double e2 = std::abs(box_ground(201, 2) - exact);
  const double e3 = std::abs(box_ground(401, 2) - exact);
  CHECK(std::log2(e1 / e2) >= 1.9);
  CHECK(std::log2(e2 / e3) >= 1.9);
}

TEST_CASE("harmonic oscillator levels") {
  for (double omega : {1.0, 25.0}) {
    const double half = 8.0 / std::sqrt(omega);
    auto g = make_grid(-half, half, 600, Boundary::Dirichlet);
    auto v = sample(g, [&](double x) { return 0.5 * omega * omega * x * x; });
    // hbar = m = 1: kinetic operator -1/2 d^2/dx^2
    Hamiltonian1D h2(g, v, 2, 0.5);
    CHECK(lowest_eigenpairs(h2.to_sparse()).energies[0] == doctest::Approx(0.5 * omega).epsilon(2e-4));
    Hamiltonian1D h4(g, v, 4, 0.5);
    auto e = lowest_eigenpairs(h4.to_sparse(), {.count = 4});
    for (int n = 0; n < 4; ++n) CHECK(std::abs(e.energies[n] - (n + 0.5) * omega) <= 1e-4 * omega);
  }
}

TEST_CASE("double-barrier well level is of order E_R / eps") {
  const double eps = 0.1;
  auto p = double_barrier(eps);
  auto g = make_grid(0.0, 2.0 * pi, 1001, Boundary::Dirichlet);
  Hamiltonian1D h(g, sample(g, [&](double x) { return u0(x, p); }));
  auto e = lowest_eigenpairs(h.to_sparse(), {.count = 24});
  // the level most concentrated between the two barrier peaks
  const double reach = std::pow(4.0 / 3.0, 0.25) * std::sqrt(eps);
  double best = 0.0, level = 0.0;
  for (std::size_t k = 0; k < e.energies.size(); ++k) {
    double w = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i)
      if (std::abs(h.unknown_point(i) - pi) < reach) w += e.vectors[k][static_cast<Eigen::Index>(i)] * e.vectors[k][static_cast<Eigen::Index>(i)];
    if (w > best) {
      best = w;
      level = e.energies[k];
    }
  }
  const double e_min = 1.0 / eps;
  CHECK(level >= 0.5 * e_min);
  CHECK(level <= 2.0 * e_min);
}

TEST_CASE("1D operator structure") {
  auto g = make_grid(0.0, 2.0 * pi, 50, Boundary::Dirichlet);
  auto p = double_barrier(0.1);
  for (int order : {2, 4}) {
    Hamiltonian1D h(g, sample(g, [&](double x) { return u0(x, p); }), order);
    CHECK(h.size() == 48);
    const SparseMatrix m = h.to_sparse();
    const SparseMatrix mt = m.transpose();
    CHECK((m - mt).norm() == 0.0);
    auto kin = lowest_eigenpairs_dense(h.kinetic(), 1);
    CHECK(kin.energies[0] > 0.0);
  }
  auto per = make_grid(0.0, 2.0 * pi, 50, Boundary::Periodic);
  Hamiltonian1D hp(per, std::vector<double>(50, 0.0));
  CHECK(hp.size() == 50);
  CHECK(lowest_eigenpairs_dense(hp.to_sparse(), 1).energies[0] == doctest::Approx(0.0).scale(1.0));

  auto bad = std::vector<double>(50, 0.0);
  bad[7] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(Hamiltonian1D(g, bad), InvalidInput);
  CHECK_THROWS_AS(Hamiltonian1D(g, std::vector<double>(49, 0.0)), InvalidInput);
  CHECK_THROWS_AS(Hamiltonian1D(g, std::vector<double>(50, 0.0), 3), InvalidInput);
}

TEST_CASE("non-interacting pair is separable") {
  auto sp = small_pair(80, 0.1);
  const double h = sp.axis.grid().spacing();
  DipolarModel none(0.0, 0.0, h);
  Hamiltonian2D h2(sp.axis, sp.s, none);
  const double e1 = lowest_eigenpairs(sp.axis.to_sparse()).energies[0];
  const double e2 = lowest_eigenpairs(h2.to_sparse(0.0)).energies[0];
  CHECK(e2 == doctest::Approx(2.0 * e1).epsilon(1e-8));
}

TEST_CASE("exchange of the two atoms leaves the operator invariant") {
  auto sp = small_pair(30, 0.1);
  DipolarModel model(0.5, 0.1, 0.0);
  Hamiltonian2D h2(sp.axis, sp.s, model);
  const SparseMatrix m = h2.to_sparse();
  const auto n = static_cast<Eigen::Index>(sp.axis.size());
  Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic, int> swap(n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) swap.indices()[i * n + j] = static_cast<int>(j * n + i);
  const SparseMatrix swapped = swap * m * swap.transpose();
  CHECK((swapped - m).norm() == 0.0);
  CHECK((m - SparseMatrix(m.transpose())).norm() == 0.0);

  auto e = lowest_eigenpairs(m);
  const Eigen::VectorXd& psi = e.vectors[0];
  CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-10));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < i; ++j)
      REQUIRE(std::abs(psi[i * n + j] * psi[i * n + j] - psi[j * n + i] * psi[j * n + i]) <= 1e-8);
}

TEST_CASE("iterative and dense ground energies agree on a 40 x 40 grid") {
  auto sp = small_pair(42, 0.1);
  REQUIRE(sp.axis.size() == 40);
  for (double l_t : {0.0, 0.2}) {
    DipolarModel model(0.8, l_t, sp.axis.grid().spacing());
    Hamiltonian2D h2(sp.axis, sp.s, model);
    const SparseMatrix m = h2.to_sparse();
    auto dense = lowest_eigenpairs_dense(m, 2);
    auto iter = lowest_eigenpairs(m, {.count = 2});
    for (int k = 0; k < 2; ++k) {
      CHECK(iter.energies[k] == doctest::Approx(dense.energies[k]).epsilon(1e-8));
      CHECK(iter.residuals[k] <= 1e-8);
    }
  }
}

TEST_CASE("interaction table must cover the grid") {
  auto sp = small_pair(30, 0.1);
  DipolarModel model(1.0, 0.1, 0.0);
  model.build_table(1.0, sp.axis.grid().spacing());
  CHECK_THROWS_AS(Hamiltonian2D(sp.axis, sp.s, model), InvalidInput);
}

TEST_CASE("ground energy is concave in a_dd and falls past the repulsive bump") {
  BoundStateSettings st;
  st.epsilon = 0.1;
  st.n = 60;
  st.l_t = 0.1 * std::sqrt(st.epsilon) * 2.0 * pi;
  BoundStateProblem problem(st);
  // E0 is a minimum of functions affine in a_dd, hence concave. Two atoms
  // outside the well repel, so E0 first rises before the attraction wins.
  const std::vector<double> ladder{0.0, 0.4, 0.8, 1.2, 1.6, 2.0, 3.0, 4.0};
  std::vector<double> e;
  for (double a : ladder) {
    auto r = problem.solve(a);
    CHECK(r.converged);
    e.push_back(r.energy);
  }
  for (std::size_t i = 1; i + 1 < ladder.size(); ++i) {
    const double t = (ladder[i] - ladder[i - 1]) / (ladder[i + 1] - ladder[i - 1]);
    CHECK(e[i] >= (1.0 - t) * e[i - 1] + t * e[i + 1] - 1e-9);
  }
  for (std::size_t i = 4; i < ladder.size(); ++i) CHECK(e[i] < e[i - 1]);
}

TEST_CASE("solver is deterministic for a fixed seed") {
  auto sp = small_pair(40, 0.1);
  DipolarModel model(0.6, 0.1, 0.0);
  Hamiltonian2D h2(sp.axis, sp.s, model);
  const SparseMatrix m = h2.to_sparse();
  auto a = lowest_eigenpairs(m, {.seed = 5});
  auto b = lowest_eigenpairs(m, {.seed = 5});
  CHECK(a.energies[0] == b.energies[0]);
  CHECK((a.vectors[0] - b.vectors[0]).norm() == 0.0);
}

TEST_CASE("Lanczos on a known spectrum") {
  const Eigen::Index n = 300;
  Eigen::VectorXd diag(n);
  for (Eigen::Index i = 0; i < n; ++i) diag[i] = 1.0 / (1.0 + static_cast<double>(i));
  LinearOperator op = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) { y = diag.cwiseProduct(x); };
  auto r = lanczos_largest(op, n, {.nev = 3});
  REQUIRE(r.converged);
  CHECK(r.values[0] == doctest::Approx(1.0));
  CHECK(r.values[1] == doctest::Approx(0.5));
  CHECK(r.values[2] == doctest::Approx(1.0 / 3.0));
  CHECK(std::abs(r.vectors[0][0]) == doctest::Approx(1.0));
  CHECK(seeded_vector(10, 3).norm() == doctest::Approx(1.0));
  CHECK((seeded_vector(10, 3) - seeded_vector(10, 3)).norm() == 0.0);
}

TEST_CASE("threshold search at eps = 1/10 without transverse width") {
  BoundStateSettings st;
  st.epsilon = 0.1;
  BoundStateProblem problem(st);
  auto r = add_min_bisect(problem);
  const double lambda = 2.0 * pi;
  CHECK(r.a_dd_min / lambda == doctest::Approx(0.55 * std::sqrt(0.1)).epsilon(0.20));
  CHECK(r.e_lo >= 0.0);
  CHECK(r.e_hi < 0.0);
  CHECK(r.a_hi - r.a_lo <= 1e-2 * r.a_hi);
  CHECK(r.state.bound);
  CHECK(r.state.energy <= 0.0);
  CHECK(std::abs(r.state.energy) < 0.1 * problem.u0_peak());

  auto obs = problem.observables(r.state.psi, 1e4, 0.0, OffDiagonalForm::Symmetrized);
  CHECK(obs.x12_mean > 0.0);
  CHECK(std::isinf(obs.tau));
}

TEST_CASE("no bound state within the cap is an error") {
  BoundStateSettings st;
  st.n = 60;
  BoundStateProblem problem(st);
  CHECK_THROWS_AS(add_min_bisect(problem, {.a_start = 0.01, .cap_factor = 1.0}), NumericalError);
}

TEST_CASE("observables of simple densities") {
  BoundStateSettings st;
  st.n = 60;
  BoundStateProblem problem(st);
  const auto m = static_cast<Eigen::Index>(problem.interior());
  // all weight on the diagonal
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(m * m);
  for (Eigen::Index i = 0; i < m; ++i) diag[i * m + i] = 1.0;
  diag.normalize();
  auto o = problem.observables(diag, 1e4, 1e6, OffDiagonalForm::Symmetrized);
  CHECK(o.x12_mean == 0.0);
  CHECK(o.one_in_one_out == 0.0);
  CHECK(o.gamma_d_bar > 0.0);
  CHECK(o.tau == doctest::Approx(1.0 / o.gamma_d_bar));

  auto cross = problem.observables(diag, 1e4, 1e6, OffDiagonalForm::Cross);
  CHECK(cross.u_off == cross.u_off_cross);
  CHECK(o.u_off == o.u_off_symmetrized);

  // one atom at each end of the axis
  Eigen::VectorXd ends = Eigen::VectorXd::Zero(m * m);
  ends[0 * m + (m - 1)] = ends[(m - 1) * m + 0] = 1.0;
  ends.normalize();
  CHECK(problem.observables(ends, 1e4, 1e6, OffDiagonalForm::Symmetrized).x12_mean ==
        doctest::Approx(problem.grid().point(m) - problem.grid().point(1)));

  CHECK_THROWS_AS(problem.observables(Eigen::VectorXd::Zero(5), 1e4, 1e6, OffDiagonalForm::Symmetrized),
                  InvalidInput);
}

TEST_CASE("slope fits") {
  auto f = fit_slope({1.0, 2.0, 3.0}, {2.0, 4.0, 6.0});
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.slope_affine == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(0.0).scale(1.0));
  auto g = fit_slope({1.0, 2.0, 3.0}, {3.0, 5.0, 7.0});
  CHECK(g.slope_affine == doctest::Approx(2.0));
  CHECK(g.intercept == doctest::Approx(1.0));
  CHECK(g.points == 3);
}
