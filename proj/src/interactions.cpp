#include "darkpot/interactions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "darkpot/adiabatic.hpp"
#include "darkpot/constants.hpp"
#include "darkpot/errors.hpp"

namespace darkpot {

double moment_fraction(double x, const FieldProfile& p) {
  return 2.0 * population_g1(x, p) - 1.0;
}

double magnetic_moment(double x, const FieldProfile& p, double mu_max) {
  return mu_max * moment_fraction(x, p);
}

double dipolar_length(double mu, const AtomSpecies& species) {
  if (mu < 0.0) throw InvalidInput("dipolar_length needs mu >= 0");
  return constants::mu0 * mu * mu * species.mass() / (12.0 * constants::pi * constants::hbar * constants::hbar);
}

double moment_for(double a_dd, const AtomSpecies& species) {
  if (a_dd < 0.0) throw InvalidInput("moment_for needs a_dd >= 0");
  return std::sqrt(12.0 * constants::pi * constants::hbar * constants::hbar * a_dd /
                   (constants::mu0 * species.mass()));
}

double dipole_kernel_3d(double x, double y, double z) {
  const double r2 = x * x + y * y + z * z;
  const double r = std::sqrt(r2);
  return (r2 - 3.0 * z * z) / (r2 * r2 * r);
}

double v3d(double x12, double y12, double z12, double mu1, double mu2, double r_c) {
  const double r = std::sqrt(x12 * x12 + y12 * y12 + z12 * z12);
  if (!(r_c > 0.0)) throw InvalidInput("v3d needs r_c > 0");
  double sx = x12, sy = y12, sz = z12;
  if (r < r_c) {
    if (r == 0.0) {
      // Direction undefined; use the side-by-side value.
      sx = r_c;
      sy = sz = 0.0;
    } else {
      const double s = r_c / r;
      sx *= s;
      sy *= s;
      sz *= s;
    }
  }
  return constants::mu0 * mu1 * mu2 / (4.0 * constants::pi) * dipole_kernel_3d(sx, sy, sz);
}

const char* to_string(WidthConvention w) {
  return w == WidthConvention::LT ? "lt" : "sqrt2_lt";
}

namespace {

// sqrt(pi) (1 + 2u^2) e^{u^2} erfc(u) - 2u, valid for either sign of u.
double kernel_branch(double u) {
  return std::sqrt(constants::pi) * (1.0 + 2.0 * u * u) * std::exp(u * u) * std::erfc(u) - 2.0 * u;
}

}  // namespace

double transverse_kernel_scaled(double u) {
  u = std::abs(u);
  if (u >= 6.0) {
    // Asymptotic series sum_m (-1)^(m+1) 2m (2m-1)!! / 2^m u^-(2m+1).
    const double inv2 = 1.0 / (u * u);
    double term_base = 1.0;  // (2m-1)!! / 2^m
    double power = 1.0 / u;
    double sum = 0.0;
    double last = std::numeric_limits<double>::infinity();
    for (int m = 1; m < 40; ++m) {
      term_base *= (2.0 * m - 1.0) / 2.0;
      power *= inv2;
      const double term = 2.0 * m * term_base * power;
      if (term >= last) break;
      sum += (m % 2 == 1) ? term : -term;
      if (term < 1e-18 * std::abs(sum)) break;
      last = term;
    }
    return sum;
  }
  return kernel_branch(u);
}

DipolarModel::DipolarModel(double a_dd, double l_t, double r_c, WidthConvention width)
    : a_dd_(a_dd), l_t_(l_t), r_c_(r_c), width_(width) {
  if (!std::isfinite(a_dd) || a_dd < 0.0) throw InvalidInput("a_dd must be finite and >= 0");
  if (!std::isfinite(l_t) || l_t < 0.0) throw InvalidInput("l_T must be finite and >= 0");
  if (l_t == 0.0 && !(r_c > 0.0)) throw InvalidInput("r_c must be > 0 when l_T = 0");
  if (r_c < 0.0) throw InvalidInput("r_c must be >= 0");
}

double DipolarModel::relative_width() const {
  return width_ == WidthConvention::LT ? l_t_ : std::sqrt(2.0) * l_t_;
}

DipolarModel DipolarModel::with_a_dd(double a_dd) const {
  DipolarModel m = *this;
  if (!std::isfinite(a_dd) || a_dd < 0.0) throw InvalidInput("a_dd must be finite and >= 0");
  m.a_dd_ = a_dd;
  return m;
}

double DipolarModel::kernel(double x) const {
  const double ax = std::abs(x);
  if (l_t_ == 0.0) {
    const double r = std::max(ax, r_c_);
    return 1.0 / (r * r * r);
  }
  const double w = relative_width();
  return transverse_kernel_scaled(ax / w) / (w * w * w);
}

void DipolarModel::build_table(double x_max, double spacing) {
  if (!(spacing > 0.0) || !(x_max > 0.0)) throw InvalidInput("table needs x_max > 0 and spacing > 0");
  const auto n = static_cast<std::size_t>(std::ceil(x_max / spacing - 1e-9)) + 3;
  table_.resize(n);
  for (std::size_t i = 0; i < n; ++i) table_[i] = kernel(static_cast<double>(i) * spacing);
  if (l_t_ > 0.0) {
    const double w = relative_width();
    table_ghost_ = kernel_branch(-spacing / w) / (w * w * w);
  } else {
    table_ghost_ = table_[1];
  }
  table_h_ = spacing;
  table_max_ = static_cast<double>(n - 3) * spacing;
}

double DipolarModel::kernel_interpolated(double x) const {
  if (table_.empty()) return kernel(x);
  const double ax = std::abs(x);
  if (ax > table_max_ * (1.0 + 1e-12)) {
    throw InvalidInput("interaction table queried outside its range");
  }
  const double t = ax / table_h_;
  auto i = static_cast<std::size_t>(std::floor(t));
  const double frac = t - static_cast<double>(i);
  if (frac < 1e-12) return table_[i];
  if (frac > 1.0 - 1e-12) return table_[i + 1];
  // Four-point Lagrange cubic on nodes i-1..i+2. K has a cusp at 0, so node
  // -1 of the first interval comes from the smooth branch rather than a mirror.
  const double f0 = i == 0 ? table_ghost_ : table_[i - 1];
  const double f1 = table_[i], f2 = table_[i + 1], f3 = table_[i + 2];
  const double s = frac;
  return f0 * (-s * (s - 1.0) * (s - 2.0) / 6.0) + f1 * ((s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0) +
         f2 * (-(s + 1.0) * s * (s - 2.0) / 2.0) + f3 * ((s + 1.0) * s * (s - 1.0) / 6.0);
}

double DipolarModel::effective_1d(double x12, double s1, double s2) const {
  return 6.0 * a_dd_ * s1 * s2 * kernel_interpolated(x12);
}

void DipolarModel::write_table_csv(std::ostream& out) const {
  out << "x12,kernel\n";
  char buf[64];
  for (std::size_t i = 0; i + 2 < table_.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", static_cast<double>(i) * table_h_, table_[i]);
    out << buf;
  }
}

}  // namespace darkpot
