#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "darkpot/fields.hpp"
#include "darkpot/hamiltonian.hpp"
#include "darkpot/interactions.hpp"

namespace darkpot {

enum class OffDiagonalForm { Symmetrized, Cross };

const char* to_string(OffDiagonalForm f);

struct BoundStateSettings {
  double epsilon = 0.1;
  double d = 0.0;
  double phi = 0.0;
  double l_t = 0.0;           // reduced length
  WidthConvention width = WidthConvention::LT;
  std::size_t n = 200;        // points per axis on [0, 2 pi], endpoints included
  int stencil_order = 2;
  double r_c = 0.0;           // 0 selects the grid spacing
  double tol = 1e-12;
  std::uint64_t seed = 20240611;
};

struct BoundStateObservables {
  double x12_mean = 0.0;      // reduced length
  double u_off = 0.0;         // E_R, selected form
  double u_off_symmetrized = 0.0;
  double u_off_cross = 0.0;
  double p_b_mean = 0.0;      // averaged U0 U1 / (2 Omega)^2, selected form
  double gamma_d_bar = 0.0;   // rad/s
  double tau = std::numeric_limits<double>::infinity();  // s
  double one_in_one_out = 0.0;  // probability mass fraction
  double wall_density = 0.0;    // max |psi|^2 near domain walls / max |psi|^2
};

struct BoundStateResult {
  double a_dd = 0.0;          // reduced length
  double energy = 0.0;        // E_R
  Eigen::VectorXd psi;        // unit 2-norm on the n_in x n_in interior grid
  double residual = 0.0;
  bool converged = false;
  bool bound = false;         // energy < 0
  BoundStateObservables obs;
};

// Two-atom problem on one period of the double-barrier profile. Built once per
// (profile, l_T) and reused across dipolar lengths.
class BoundStateProblem {
 public:
  explicit BoundStateProblem(const BoundStateSettings& s);

  const BoundStateSettings& settings() const { return settings_; }
  const Grid1D& grid() const { return grid_; }
  const FieldProfile& profile() const { return profile_; }
  const std::vector<double>& u0() const { return u0_; }
  const std::vector<double>& u1() const { return u1_; }
  const std::vector<double>& moment() const { return s_; }
  const Hamiltonian2D& hamiltonian() const { return *h2_; }
  std::size_t interior() const { return grid_.size() - 2; }

  double u0_peak() const { return u0_peak_; }
  // Two barrier maxima around the well center.
  std::pair<double, double> barrier_peaks() const { return peaks_; }
  // Points where f = 1.
  const std::vector<double>& domain_walls() const { return walls_; }

  // Ground state at the given dipolar length (reduced).
  BoundStateResult solve(double a_dd, const Eigen::VectorXd* warm = nullptr) const;

  // Observables for a normalized psi. omega0 and gamma in E_R/hbar and rad/s.
  BoundStateObservables observables(const Eigen::VectorXd& psi, double omega0_reduced,
                                    double gamma_rad_s, OffDiagonalForm form) const;

 private:
  BoundStateSettings settings_;
  Grid1D grid_;
  FieldProfile profile_;
  std::vector<double> u0_, u1_, s_, omega_shape_;
  std::unique_ptr<Hamiltonian2D> h2_;
  double u0_peak_ = 0.0;
  std::pair<double, double> peaks_{0.0, 0.0};
  std::vector<double> walls_;
};

struct BisectionStep {
  double a_dd = 0.0;
  double energy = 0.0;
};

struct BisectionResult {
  double a_lo = 0.0;
  double a_hi = 0.0;
  double e_lo = 0.0;
  double e_hi = 0.0;
  double a_dd_min = 0.0;   // upper end of the final bracket
  std::vector<BisectionStep> evidence;
  BoundStateResult state;  // solution at a_dd_min
};

struct BisectionOptions {
  double rel_tol = 1e-2;
  double a_start = 0.0;    // initial upper guess; 0 picks 0.55 sqrt(eps) lambda
  double cap_factor = 64.0;  // largest a_hi = cap_factor * a_start
};

// Smallest dipolar length with a negative ground-state energy.
BisectionResult add_min_bisect(const BoundStateProblem& problem, const BisectionOptions& opt = {});

}  // namespace darkpot
