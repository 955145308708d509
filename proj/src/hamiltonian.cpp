#include "darkpot/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/SparseCholesky>

#include "darkpot/errors.hpp"
#include "darkpot/lanczos.hpp"

namespace darkpot {

namespace {

using Triplet = Eigen::Triplet<double>;

}  // namespace

Hamiltonian1D::Hamiltonian1D(Grid1D grid, std::vector<double> potential, int stencil_order,
                             double kinetic_scale)
    : grid_(std::move(grid)), potential_(std::move(potential)), order_(stencil_order),
      kinetic_scale_(kinetic_scale) {
  if (potential_.size() != grid_.size()) throw InvalidInput("potential must be sampled on every grid point");
  if (order_ != 2 && order_ != 4) throw InvalidInput("stencil order must be 2 or 4");
  if (!(kinetic_scale_ > 0.0)) throw InvalidInput("kinetic scale must be > 0");
  for (double v : potential_) {
    if (!std::isfinite(v)) throw InvalidInput("potential contains NaN or infinity");
  }
  if (order_ == 4 && size() < 5) throw InvalidInput("fourth-order stencil needs at least 5 unknowns");
}

std::size_t Hamiltonian1D::size() const {
  return grid_.boundary() == Boundary::Dirichlet ? grid_.size() - 2 : grid_.size();
}

std::size_t Hamiltonian1D::grid_index(std::size_t i) const {
  return grid_.boundary() == Boundary::Dirichlet ? i + 1 : i;
}

SparseMatrix Hamiltonian1D::kinetic() const {
  const auto n = static_cast<long>(size());
  const double h = grid_.spacing();
  const double c = kinetic_scale_ / (h * h);
  const bool periodic = grid_.boundary() == Boundary::Periodic;
  // -d^2/dx^2 coefficients at offsets 0, 1, 2.
  const std::vector<double> coef = order_ == 2 ? std::vector<double>{2.0, -1.0}
                                               : std::vector<double>{30.0 / 12.0, -16.0 / 12.0, 1.0 / 12.0};
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(n) * (2 * coef.size() - 1));
  for (long i = 0; i < n; ++i) {
    double diag = coef[0];
    if (!periodic && order_ == 4 && (i == 0 || i == n - 1)) {
      // Odd reflection across the wall: psi(-h) = -psi(h).
      diag -= coef[2];
    }
    t.emplace_back(i, i, c * diag);
    for (long o = 1; o < static_cast<long>(coef.size()); ++o) {
      for (long j : {i - o, i + o}) {
        if (periodic) {
          j = ((j % n) + n) % n;
        } else if (j < 0 || j >= n) {
          continue;
        }
        t.emplace_back(i, j, c * coef[static_cast<std::size_t>(o)]);
      }
    }
  }
  SparseMatrix k(n, n);
  k.setFromTriplets(t.begin(), t.end());
  return k;
}

SparseMatrix Hamiltonian1D::to_sparse() const {
  SparseMatrix h = kinetic();
  for (std::size_t i = 0; i < size(); ++i) {
    h.coeffRef(static_cast<long>(i), static_cast<long>(i)) += potential_[grid_index(i)];
  }
  return h;
}

Hamiltonian2D::Hamiltonian2D(const Hamiltonian1D& axis, std::vector<double> moment_fraction,
                             const DipolarModel& model, std::size_t cap)
    : axis_(axis), a_dd_(model.a_dd()) {
  Grid2D check(axis.grid(), cap);
  (void)check;
  if (moment_fraction.size() != axis.grid().size()) {
    throw InvalidInput("moment fractions must be sampled on every grid point");
  }
  const auto n = static_cast<long>(axis_.size());
  w_.resize(n, n);
  for (long i = 0; i < n; ++i) {
    const double xi = axis_.unknown_point(static_cast<std::size_t>(i));
    const double si = moment_fraction[axis_.grid_index(static_cast<std::size_t>(i))];
    for (long j = 0; j <= i; ++j) {
      const double xj = axis_.unknown_point(static_cast<std::size_t>(j));
      const double sj = moment_fraction[axis_.grid_index(static_cast<std::size_t>(j))];
      const double k = model.kernel_interpolated(xi - xj);
      w_(i, j) = 6.0 * si * sj * k;
      w_(j, i) = w_(i, j);
    }
  }
}

SparseMatrix Hamiltonian2D::to_sparse() const { return to_sparse(a_dd_); }

SparseMatrix Hamiltonian2D::to_sparse(double a_dd) const {
  const SparseMatrix k1 = axis_.kinetic();
  const auto n = static_cast<long>(axis_.size());
  const long total = n * n;
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(k1.nonZeros()) * 2 * static_cast<std::size_t>(n) +
            static_cast<std::size_t>(total));
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) {
      const long row = i * n + j;
      const double diag = axis_.potential()[axis_.grid_index(static_cast<std::size_t>(i))] +
                          axis_.potential()[axis_.grid_index(static_cast<std::size_t>(j))] +
                          a_dd * w_(i, j);
      t.emplace_back(row, row, diag);
    }
  }
  for (long col = 0; col < k1.outerSize(); ++col) {
    for (SparseMatrix::InnerIterator it(k1, col); it; ++it) {
      const long a = it.row(), b = it.col();
      for (long s = 0; s < n; ++s) {
        t.emplace_back(a * n + s, b * n + s, it.value());  // kinetic on x1
        t.emplace_back(s * n + a, s * n + b, it.value());  // kinetic on x2
      }
    }
  }
  SparseMatrix h(total, total);
  h.setFromTriplets(t.begin(), t.end());
  return h;
}

namespace {

double residual_norm(const SparseMatrix& h, const Eigen::VectorXd& v, double e) {
  return (h * v - e * v).norm() / std::max(1.0, std::abs(e));
}

}  // namespace

EigenPairs lowest_eigenpairs(const SparseMatrix& h, const EigenOptions& opt) {
  const Eigen::Index n = h.rows();
  if (n == 0 || h.cols() != n) throw InvalidInput("eigensolver needs a square, non-empty operator");
  if (opt.count < 1 || opt.count > n) throw InvalidInput("eigenpair count out of range");

  // Gershgorin lower bound and a Rayleigh-quotient upper bound on E_0.
  double lower = std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
  for (Eigen::Index c = 0; c < n; ++c) {
    double diag = 0.0, off = 0.0;
    for (SparseMatrix::InnerIterator it(h, c); it; ++it) {
      if (it.row() == c) diag = it.value();
      else off += std::abs(it.value());
    }
    lower = std::min(lower, diag - off);
    upper = std::min(upper, diag);
  }
  const Eigen::VectorXd probe =
      opt.start && opt.start->size() == n && opt.start->norm() > 0.0 ? opt.start->normalized()
                                                                    : seeded_vector(n, opt.seed);
  upper = std::min(upper, probe.dot(h * probe));
  lower -= 1.0;

  SparseMatrix identity(n, n);
  identity.setIdentity();
  Eigen::SimplicialLDLT<SparseMatrix> ldlt;
  ldlt.analyzePattern(h + identity);
  // Number of eigenvalues below sigma (Sylvester inertia); -1 on breakdown.
  auto negatives = [&](double sigma) -> long {
    ldlt.factorize(h - sigma * identity);
    if (ldlt.info() != Eigen::Success) return -1;
    const auto& d = ldlt.vectorD();
    if ((d.array() == 0.0).any()) return -1;
    return static_cast<long>((d.array() < 0.0).count());
  };

  // Move the shift up towards E_0 so the wanted eigenvalues of (H - sigma)^-1
  // are well separated: step down from the upper bound, then bisect.
  const double width = 1e-3 * std::max(1.0, std::abs(upper));
  double step = width;
  while (upper - lower > width) {
    const double sigma = std::max(upper - step, 0.5 * (lower + upper));
    if (negatives(sigma) == 0) {
      lower = sigma;
      break;
    }
    upper = sigma;
    step *= 4.0;
  }
  for (int it = 0; it < 60 && upper - lower > width; ++it) {
    const double sigma = 0.5 * (lower + upper);
    if (negatives(sigma) == 0) lower = sigma;
    else upper = sigma;
  }
  const double sigma = lower;
  if (negatives(sigma) != 0) {
    throw NumericalError("shift-invert factorization failed: shift not below the spectrum");
  }

  const LinearOperator op = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) { y = ldlt.solve(x); };
  LanczosOptions lo;
  lo.nev = opt.count;
  lo.tol = opt.tol;
  lo.seed = opt.seed;
  lo.max_restarts = opt.max_restarts;
  lo.start = opt.start;
  const LanczosResult lr = lanczos_largest(op, n, lo);

  EigenPairs out;
  out.shift = sigma;
  out.matvecs = lr.matvecs;
  for (std::size_t i = 0; i < lr.values.size(); ++i) {
    const double e = sigma + 1.0 / lr.values[i];
    out.energies.push_back(e);
    out.vectors.push_back(lr.vectors[i]);
    out.residuals.push_back(residual_norm(h, lr.vectors[i], e));
  }
  const double worst = *std::max_element(out.residuals.begin(), out.residuals.end());
  if (!lr.converged || worst > 1e-8) {
    throw NumericalError("eigensolver did not converge after " + std::to_string(lr.restarts) +
                         " restarts (relative residual " + std::to_string(worst) + ")");
  }
  return out;
}

EigenPairs lowest_eigenpairs_dense(const SparseMatrix& h, int count) {
  const Eigen::MatrixXd a = Eigen::MatrixXd(h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  if (es.info() != Eigen::Success) throw NumericalError("dense eigensolver failed");
  EigenPairs out;
  for (int i = 0; i < count; ++i) {
    const double e = es.eigenvalues()[i];
    Eigen::VectorXd v = es.eigenvectors().col(i);
    out.energies.push_back(e);
    out.residuals.push_back(residual_norm(h, v, e));
    out.vectors.push_back(std::move(v));
  }
  return out;
}

}  // namespace darkpot
