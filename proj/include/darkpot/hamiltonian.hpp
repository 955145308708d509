#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "darkpot/grid.hpp"
#include "darkpot/interactions.hpp"

namespace darkpot {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor>;

// Kinetic operator -kinetic_scale d^2/dx^2 (kinetic_scale = hbar^2/2m, which
// is 1 in recoil units). Dirichlet grids solve for the interior points only;
// the two endpoints carry psi = 0.
class Hamiltonian1D {
 public:
  Hamiltonian1D(Grid1D grid, std::vector<double> potential, int stencil_order = 2,
                double kinetic_scale = 1.0);

  const Grid1D& grid() const { return grid_; }
  int stencil_order() const { return order_; }
  double kinetic_scale() const { return kinetic_scale_; }
  const std::vector<double>& potential() const { return potential_; }

  // Unknowns: interior points for Dirichlet, all points for periodic.
  std::size_t size() const;
  // Grid index of unknown i.
  std::size_t grid_index(std::size_t i) const;
  double unknown_point(std::size_t i) const { return grid_.point(grid_index(i)); }

  SparseMatrix to_sparse() const;
  // Kinetic part only.
  SparseMatrix kinetic() const;

 private:
  Grid1D grid_;
  std::vector<double> potential_;
  int order_;
  double kinetic_scale_;
};

// Two atoms on the same axis grid:
//   H = T1 + T2 + U(x1) + U(x2) + 6 a_dd s(x1) s(x2) K(x1 - x2).
// Unknown (i, j) maps to index i * n + j.
class Hamiltonian2D {
 public:
  Hamiltonian2D(const Hamiltonian1D& axis, std::vector<double> moment_fraction,
                const DipolarModel& model, std::size_t cap = Grid2D::default_cap);

  const Hamiltonian1D& axis() const { return axis_; }
  std::size_t size() const { return axis_.size() * axis_.size(); }

  SparseMatrix to_sparse() const;
  // Interaction matrix W(i, j) = 6 s_i s_j K(x_i - x_j) per unit a_dd on unknowns.
  const Eigen::MatrixXd& interaction_per_add() const { return w_; }
  double a_dd() const { return a_dd_; }

  // Same operator with a different dipolar length.
  SparseMatrix to_sparse(double a_dd) const;

 private:
  Hamiltonian1D axis_;
  Eigen::MatrixXd w_;
  double a_dd_;
};

struct EigenOptions {
  int count = 1;
  double tol = 1e-12;
  std::uint64_t seed = 20240611;
  int max_restarts = 500;
  const Eigen::VectorXd* start = nullptr;
};

struct EigenPairs {
  std::vector<double> energies;           // ascending
  std::vector<Eigen::VectorXd> vectors;   // unit 2-norm on unknowns
  std::vector<double> residuals;          // ||H v - E v|| / max(1, |E|)
  double shift = 0.0;
  int matvecs = 0;
};

// Lowest eigenpairs by shift-invert Lanczos. The shift lies below the
// spectrum (checked through the LDL^T inertia), so the largest eigenvalues of
// (H - sigma)^-1 are the lowest of H. Throws NumericalError when the residual
// exceeds 1e-8 or the iteration does not converge.
EigenPairs lowest_eigenpairs(const SparseMatrix& h, const EigenOptions& opt = {});

// Dense reference solver for small operators.
EigenPairs lowest_eigenpairs_dense(const SparseMatrix& h, int count = 1);

}  // namespace darkpot
