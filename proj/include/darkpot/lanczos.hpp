#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace darkpot {

// y = A x for a symmetric operator A of dimension n.
using LinearOperator = std::function<void(const Eigen::VectorXd& x, Eigen::VectorXd& y)>;

struct LanczosOptions {
  int nev = 1;               // wanted eigenpairs
  int ncv = 0;               // basis size; 0 picks max(2 nev + 10, 24)
  double tol = 1e-12;        // relative Ritz residual
  int max_restarts = 500;
  std::uint64_t seed = 20240611;
  const Eigen::VectorXd* start = nullptr;  // optional warm start
};

struct LanczosResult {
  std::vector<double> values;              // descending
  std::vector<Eigen::VectorXd> vectors;    // unit norm
  std::vector<double> residuals;           // ||A v - theta v||
  int restarts = 0;
  int matvecs = 0;
  bool converged = false;
};

// Largest algebraic eigenvalues of A by thick-restart Lanczos with full
// reorthogonalization. Deterministic for a fixed seed.
LanczosResult lanczos_largest(const LinearOperator& op, Eigen::Index n, const LanczosOptions& opt = {});

// Deterministic unit start vector of length n.
Eigen::VectorXd seeded_vector(Eigen::Index n, std::uint64_t seed);

}  // namespace darkpot
