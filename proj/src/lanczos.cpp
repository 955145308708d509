#include "darkpot/lanczos.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "darkpot/errors.hpp"

namespace darkpot {

Eigen::VectorXd seeded_vector(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = dist(rng);
  return v.normalized();
}

namespace {

// Orthogonalize w against the first k columns of V twice; returns the
// accumulated coefficients.
Eigen::VectorXd orthogonalize(const Eigen::MatrixXd& V, Eigen::Index k, Eigen::VectorXd& w) {
  Eigen::VectorXd h = Eigen::VectorXd::Zero(k);
  for (int pass = 0; pass < 2; ++pass) {
    const Eigen::VectorXd c = V.leftCols(k).transpose() * w;
    w.noalias() -= V.leftCols(k) * c;
    h += c;
  }
  return h;
}

LanczosResult dense_fallback(const LinearOperator& op, Eigen::Index n, const LanczosOptions& opt) {
  Eigen::MatrixXd A(n, n);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(n), y(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    e[j] = 1.0;
    op(e, y);
    A.col(j) = y;
    e[j] = 0.0;
  }
  A = 0.5 * (A + A.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
  LanczosResult r;
  r.matvecs = static_cast<int>(n);
  r.converged = es.info() == Eigen::Success;
  for (int i = 0; i < opt.nev; ++i) {
    const Eigen::Index c = n - 1 - i;
    r.values.push_back(es.eigenvalues()[c]);
    Eigen::VectorXd v = es.eigenvectors().col(c);
    // Fix the sign so the result does not depend on LAPACK-style conventions.
    Eigen::Index imax;
    v.cwiseAbs().maxCoeff(&imax);
    if (v[imax] < 0.0) v = -v;
    r.vectors.push_back(v);
    r.residuals.push_back((A * v - es.eigenvalues()[c] * v).norm());
  }
  return r;
}

}  // namespace

LanczosResult lanczos_largest(const LinearOperator& op, Eigen::Index n, const LanczosOptions& opt) {
  if (n <= 0) throw InvalidInput("lanczos: empty operator");
  if (opt.nev < 1 || opt.nev > n) throw InvalidInput("lanczos: nev out of range");
  if (n <= 64) return dense_fallback(op, n, opt);

  const int nev = opt.nev;
  const Eigen::Index m = std::min<Eigen::Index>(opt.ncv > 0 ? opt.ncv : std::max(2 * nev + 10, 24), n);
  if (m <= nev) throw InvalidInput("lanczos: ncv must exceed nev");

  Eigen::MatrixXd V(n, m + 1);
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
  LanczosResult r;

  Eigen::VectorXd v0 = opt.start && opt.start->size() == n && opt.start->norm() > 0.0
                           ? Eigen::VectorXd(opt.start->normalized())
                           : seeded_vector(n, opt.seed);
  V.col(0) = v0;
  Eigen::Index kept = 0;
  Eigen::VectorXd w(n);
  std::uint64_t reseed = opt.seed;

  for (int restart = 0; restart <= opt.max_restarts; ++restart) {
    r.restarts = restart;
    double beta = 0.0;
    for (Eigen::Index j = kept; j < m; ++j) {
      op(V.col(j), w);
      ++r.matvecs;
      const Eigen::VectorXd h = orthogonalize(V, j + 1, w);
      for (Eigen::Index i = 0; i <= j; ++i) {
        // Rows below kept are coupled only through the projection; the
        // Ritz block stays diagonal.
        if (i < kept && j < kept) continue;
        T(i, j) = h[i];
        T(j, i) = h[i];
      }
      beta = w.norm();
      if (beta <= 1e-14 * std::max(1.0, std::abs(T(j, j)))) {
        // Invariant subspace: continue with a fresh orthogonal direction.
        beta = 0.0;
        Eigen::VectorXd fresh = seeded_vector(n, ++reseed);
        orthogonalize(V, j + 1, fresh);
        V.col(j + 1) = fresh.normalized();
      } else {
        V.col(j + 1) = w / beta;
      }
      if (j + 1 < m) {
        T(j + 1, j) = beta;
        T(j, j + 1) = beta;
      }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    const Eigen::VectorXd& theta = es.eigenvalues();  // ascending
    const Eigen::MatrixXd& Y = es.eigenvectors();

    bool done = true;
    for (int i = 0; i < nev; ++i) {
      const Eigen::Index c = m - 1 - i;
      const double res = std::abs(beta * Y(m - 1, c));
      if (res > opt.tol * std::max(std::abs(theta[c]), 1e-300)) done = false;
    }

    if (done || restart == opt.max_restarts) {
      r.converged = done;
      for (int i = 0; i < nev; ++i) {
        const Eigen::Index c = m - 1 - i;
        Eigen::VectorXd v = V.leftCols(m) * Y.col(c);
        v.normalize();
        Eigen::Index imax;
        v.cwiseAbs().maxCoeff(&imax);
        if (v[imax] < 0.0) v = -v;
        r.values.push_back(theta[c]);
        r.vectors.push_back(std::move(v));
        r.residuals.push_back(std::abs(beta * Y(m - 1, c)));
      }
      return r;
    }

    // Keep the largest Ritz pairs plus a buffer.
    const Eigen::Index keep = std::min<Eigen::Index>(m - 1, nev + (m - nev) / 2);
    Eigen::MatrixXd Yk = Y.rightCols(keep).rowwise().reverse();
    Eigen::MatrixXd Vk = V.leftCols(m) * Yk;
    const Eigen::VectorXd residual = V.col(m);
    T.setZero();
    for (Eigen::Index i = 0; i < keep; ++i) {
      const Eigen::Index c = m - 1 - i;
      T(i, i) = theta[c];
      T(i, keep) = beta * Y(m - 1, c);
      T(keep, i) = T(i, keep);
    }
    V.leftCols(keep) = Vk;
    V.col(keep) = residual;
    kept = keep;
  }
  return r;
}

}  // namespace darkpot
