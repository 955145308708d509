#pragma once

#include <cstddef>
#include <vector>

namespace darkpot {

enum class Boundary { Dirichlet, Periodic };

// Uniform 1D grid. Dirichlet grids include both endpoints (where the wave
// function is pinned to zero); periodic grids exclude x_max.
class Grid1D {
 public:
  Grid1D(double x_min, double x_max, std::size_t n, Boundary boundary);

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  std::size_t size() const { return n_; }
  Boundary boundary() const { return boundary_; }
  double spacing() const { return h_; }
  double point(std::size_t i) const { return x_min_ + static_cast<double>(i) * h_; }
  const std::vector<double>& points() const { return points_; }

 private:
  double x_min_;
  double x_max_;
  std::size_t n_;
  Boundary boundary_;
  double h_;
  std::vector<double> points_;
};

// Throws InvalidInput for n < 3 or x_max <= x_min.
Grid1D make_grid(double x_min, double x_max, std::size_t n, Boundary boundary);

// Square product grid; both atoms share the axis.
class Grid2D {
 public:
  static constexpr std::size_t default_cap = 250 * 250;

  explicit Grid2D(Grid1D axis, std::size_t cap = default_cap);

  const Grid1D& axis() const { return axis_; }
  std::size_t total_size() const { return axis_.size() * axis_.size(); }

 private:
  Grid1D axis_;
};

}  // namespace darkpot
