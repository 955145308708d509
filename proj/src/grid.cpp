#include "darkpot/grid.hpp"

#include <cmath>
#include <string>

#include "darkpot/errors.hpp"

namespace darkpot {

Grid1D::Grid1D(double x_min, double x_max, std::size_t n, Boundary boundary)
    : x_min_(x_min), x_max_(x_max), n_(n), boundary_(boundary) {
  if (n < 3) throw InvalidInput("grid needs at least 3 points, got " + std::to_string(n));
  if (!(x_max > x_min) || !std::isfinite(x_min) || !std::isfinite(x_max)) {
    throw InvalidInput("grid bounds must satisfy x_min < x_max");
  }
  const double intervals =
      boundary == Boundary::Dirichlet ? static_cast<double>(n - 1) : static_cast<double>(n);
  h_ = (x_max - x_min) / intervals;
  points_.resize(n);
  for (std::size_t i = 0; i < n; ++i) points_[i] = point(i);
}

Grid1D make_grid(double x_min, double x_max, std::size_t n, Boundary boundary) {
  return Grid1D(x_min, x_max, n, boundary);
}

Grid2D::Grid2D(Grid1D axis, std::size_t cap) : axis_(std::move(axis)) {
  if (total_size() > cap) {
    throw InvalidInput("2D grid of " + std::to_string(total_size()) +
                       " points exceeds the cap of " + std::to_string(cap));
  }
}

}  // namespace darkpot
