#include "darkpot/fields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "darkpot/errors.hpp"

namespace darkpot {

namespace {

constexpr double pi = std::numbers::pi;

// Derivative of A + B cos(k x + shift).
double cosine_term(double A, double B, double k, double x, double shift, int derivative) {
  const double arg = k * x + shift;
  switch (derivative) {
    case 0: return A + B * std::cos(arg);
    case 1: return -B * k * std::sin(arg);
    case 2: return -B * k * k * std::cos(arg);
    default: throw InvalidInput("only derivatives up to order 2 are available");
  }
}

// Solutions of A + B cos(k x + shift) = 0 inside one period [0, 2 pi / k).
std::vector<double> cosine_zeros(double A, double B, double k, double shift) {
  std::vector<double> out;
  if (B == 0.0) return out;
  const double c = -A / B;
  if (c < -1.0 || c > 1.0) return out;
  const double base = std::acos(c);
  const double period = 2.0 * pi / k;
  for (double s : {base, -base}) {
    double x = (s - shift) / k;
    x = std::fmod(x, period);
    if (x < 0) x += period;
    out.push_back(x);
  }
  return out;
}

bool negligible(double v, double scale) { return std::abs(v) <= 1e-13 * scale; }

}  // namespace

FieldProfile FieldProfile::cosine(double omega0_c, double omega0_p, CosineCoefficients coeffs,
                                  double k, bool allow_sign_changes) {
  FieldProfile p = cosine_unchecked(omega0_c, omega0_p, coeffs, k);
  if (!(k > 0.0) || !std::isfinite(k)) throw InvalidInput("wavenumber k must be > 0");
  if (!allow_sign_changes &&
      (coeffs.a < std::abs(coeffs.b) || coeffs.c < std::abs(coeffs.d))) {
    throw InvalidInput("cosine profile requires a >= |b| and c >= |d|");
  }
  p.validate();
  return p;
}

FieldProfile FieldProfile::cosine_unchecked(double omega0_c, double omega0_p,
                                            CosineCoefficients coeffs, double k) {
  FieldProfile p;
  p.shape_ = ProfileShape::CosineSeries;
  p.omega0_c_ = omega0_c;
  p.omega0_p_ = omega0_p;
  p.coeffs_ = coeffs;
  p.k_ = k;
  return p;
}

FieldProfile FieldProfile::polynomial_window(double omega0, double epsilon, int order, double k) {
  if (!(epsilon > 0.0)) throw InvalidInput("polynomial window needs epsilon > 0");
  if (order < 1) throw InvalidInput("polynomial window needs order >= 1");
  if (!(omega0 > 0.0) || !(k > 0.0)) throw InvalidInput("polynomial window needs omega0, k > 0");
  FieldProfile p;
  p.shape_ = ProfileShape::PolynomialWindow;
  p.omega0_c_ = omega0;
  p.omega0_p_ = omega0 * epsilon;
  p.coeffs_ = {0.0, 0.0, 1.0, 0.0, 0.0};
  p.k_ = k;
  p.order_ = order;
  return p;
}

double FieldProfile::period() const {
  return periodic() ? 2.0 * pi / k_ : std::numeric_limits<double>::infinity();
}

std::pair<double, double> FieldProfile::domain() const {
  if (periodic()) {
    return {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  }
  return {-1.0 / k_, 1.0 / k_};
}

void FieldProfile::check_in_domain(double x) const {
  if (shape_ == ProfileShape::PolynomialWindow && std::abs(k_ * x) > 1.0 + 1e-12) {
    throw InvalidInput("polynomial window profile evaluated outside |kx| <= 1");
  }
}

double FieldProfile::coupling(double x, int derivative) const {
  if (shape_ == ProfileShape::CosineSeries) {
    return omega0_c_ * cosine_term(coeffs_.a, coeffs_.b, k_, x, 0.0, derivative);
  }
  check_in_domain(x);
  const double u = k_ * x;
  const int n = order_;
  switch (derivative) {
    case 0: return omega0_c_ * std::pow(u, n);
    case 1: return omega0_c_ * n * k_ * std::pow(u, n - 1);
    case 2: return n < 2 ? 0.0 : omega0_c_ * n * (n - 1) * k_ * k_ * std::pow(u, n - 2);
    default: throw InvalidInput("only derivatives up to order 2 are available");
  }
}

double FieldProfile::probe(double x, int derivative) const {
  if (shape_ == ProfileShape::CosineSeries) {
    return omega0_p_ * cosine_term(coeffs_.c, coeffs_.d, k_, x, coeffs_.phi, derivative);
  }
  check_in_domain(x);
  if (derivative > 2) throw InvalidInput("only derivatives up to order 2 are available");
  return derivative == 0 ? omega0_p_ : 0.0;
}

FieldProfile FieldProfile::scaled(double factor) const {
  FieldProfile p = *this;
  p.omega0_c_ *= factor;
  p.omega0_p_ *= factor;
  return p;
}

double FieldProfile::magnitude_scale() const {
  return std::abs(omega0_c_) * (std::abs(coeffs_.a) + std::abs(coeffs_.b)) +
         std::abs(omega0_p_) * (std::abs(coeffs_.c) + std::abs(coeffs_.d));
}

void FieldProfile::validate() const {
  if (shape_ == ProfileShape::PolynomialWindow) {
    if (!(omega0_p_ > 0.0)) throw InvalidInput("polynomial window needs a nonzero probe");
    return;
  }
  if (!(k_ > 0.0)) throw InvalidInput("wavenumber k must be > 0");
  const double scale = magnitude_scale();
  if (!(scale > 0.0) || !std::isfinite(scale)) throw InvalidInput("profile has no field amplitude");
  const double floor = 1e-12 * scale;

  // Exact zeros of either field are the only places Omega can vanish.
  std::vector<double> candidates = cosine_zeros(coeffs_.a, coeffs_.b, k_, 0.0);
  for (double z : cosine_zeros(coeffs_.c, coeffs_.d, k_, coeffs_.phi)) candidates.push_back(z);
  const std::size_t samples = 10000;
  const double period = 2.0 * pi / k_;
  for (std::size_t i = 0; i < samples; ++i) {
    candidates.push_back(period * static_cast<double>(i) / static_cast<double>(samples));
  }
  for (double x : candidates) {
    if (std::hypot(coupling(x), probe(x)) <= floor) {
      throw InvalidInput("profile has Omega(x) = 0 near kx = " + std::to_string(k_ * x));
    }
  }
}

ProfilePreset ProfilePreset::double_barrier(double epsilon, double d, double phi) {
  ProfilePreset p;
  p.kind = Kind::DoubleBarrier;
  p.epsilon = epsilon;
  p.d = d;
  p.phi = phi;
  return p;
}

ProfilePreset ProfilePreset::triple_barrier(double phi) {
  ProfilePreset p;
  p.kind = Kind::TripleBarrier;
  p.phi = phi;
  return p;
}

ProfilePreset ProfilePreset::linear_approx(double epsilon, int order) {
  ProfilePreset p;
  p.kind = Kind::LinearApprox;
  p.epsilon = epsilon;
  p.order = order;
  return p;
}

void ProfilePreset::validate() const {
  switch (kind) {
    case Kind::DoubleBarrier:
      if (!(epsilon > 0.0)) throw InvalidInput("double barrier needs epsilon > 0");
      if (!(d >= 0.0 && d < 1.0)) throw InvalidInput("double barrier needs 0 <= d < 1");
      if (!std::isfinite(phi)) throw InvalidInput("double barrier phase must be finite");
      return;
    case Kind::TripleBarrier:
      if (!(phi > 0.0 && phi < pi)) throw InvalidInput("triple barrier needs 0 < phi < pi");
      return;
    case Kind::LinearApprox:
      if (!(epsilon > 0.0)) throw InvalidInput("linear approximation needs epsilon > 0");
      if (order < 1) throw InvalidInput("linear approximation needs integer order >= 1");
      return;
  }
}

FieldProfile ProfilePreset::build(double omega0, double k) const {
  validate();
  switch (kind) {
    case Kind::DoubleBarrier:
      return FieldProfile::cosine(omega0, omega0 * epsilon, {1.0, 1.0, 1.0, d, phi}, k);
    case Kind::TripleBarrier:
      return FieldProfile::cosine(omega0, omega0, {1.0, 1.0, 1.0, 1.0, phi}, k);
    case Kind::LinearApprox:
      return FieldProfile::polynomial_window(omega0, epsilon, order, k);
  }
  throw InvalidInput("unknown profile preset");
}

FieldProfile double_barrier(double epsilon, double d, double phi, double omega0, double k) {
  return ProfilePreset::double_barrier(epsilon, d, phi).build(omega0, k);
}

FieldProfile triple_barrier(double phi, double omega0, double k) {
  return ProfilePreset::triple_barrier(phi).build(omega0, k);
}

FieldProfile linear_approx(double epsilon, int order, double omega0, double k) {
  return ProfilePreset::linear_approx(epsilon, order).build(omega0, k);
}

double rabi_coupling(double x, const FieldProfile& p) { return p.coupling(x); }
double rabi_probe(double x, const FieldProfile& p) { return p.probe(x); }

double ratio(double x, const FieldProfile& p) {
  const double oc = p.coupling(x);
  const double op = p.probe(x);
  const double scale = std::max({std::abs(p.omega0_c()), std::abs(p.omega0_p()), 1e-300});
  if (!negligible(op, scale)) return oc / op;
  const double inf = std::numeric_limits<double>::infinity();
  if (!negligible(oc, scale)) return std::copysign(inf, oc);
  // 0/0: walk up the derivatives until one of them is nonzero.
  for (int order = 1; order <= 2; ++order) {
    const double dc = p.coupling(x, order);
    const double dp = p.probe(x, order);
    const double dscale = scale * std::pow(p.k(), order);
    const bool zc = negligible(dc, dscale);
    const bool zp = negligible(dp, dscale);
    if (zc && zp) continue;
    if (zp) return std::copysign(inf, dc);
    return dc / dp;
  }
  throw InvalidInput("Rabi ratio has no limit at kx = " + std::to_string(p.k() * x));
}

double mixing_angle(double x, const FieldProfile& p) {
  double oc = p.coupling(x);
  double op = p.probe(x);
  if (oc == 0.0 && op == 0.0) return std::atan(ratio(x, p));
  if (op < 0.0) {
    oc = -oc;
    op = -op;
  }
  return std::atan2(oc, op);
}

std::vector<double> mixing_angle_unwrapped(const std::vector<double>& xs, const FieldProfile& p) {
  std::vector<double> out(xs.size());
  double offset = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double raw = mixing_angle(xs[i], p);
    if (i > 0) {
      const double jump = raw + offset - out[i - 1];
      if (jump > 0.5 * pi) offset -= pi;
      if (jump < -0.5 * pi) offset += pi;
    }
    out[i] = raw + offset;
  }
  return out;
}

double alpha_prime(double x, const FieldProfile& p) {
  const double oc = p.coupling(x);
  const double op = p.probe(x);
  const double dc = p.coupling(x, 1);
  const double dp = p.probe(x, 1);
  const double omega2 = oc * oc + op * op;
  const double scale = std::max({std::abs(p.omega0_c()), std::abs(p.omega0_p()), 1e-300});
  if (omega2 > 1e-26 * scale * scale) return (dc * op - oc * dp) / omega2;
  // Common zero: expand both fields to second order around x.
  const double d2c = p.coupling(x, 2);
  const double d2p = p.probe(x, 2);
  const double slope2 = dc * dc + dp * dp;
  if (slope2 == 0.0) throw InvalidInput("alpha' undefined at a double zero of both fields");
  return (d2c * dp - dc * d2p) / (2.0 * slope2);
}

double omega_norm(double x, const FieldProfile& p) { return std::hypot(p.coupling(x), p.probe(x)); }

double log_derivative(double x, const FieldProfile& p) {
  const double oc = p.coupling(x);
  const double op = p.probe(x);
  const double omega2 = oc * oc + op * op;
  if (!(omega2 > 0.0)) {
    throw InvalidInput("Omega(x) = 0 at kx = " + std::to_string(p.k() * x));
  }
  return (oc * p.coupling(x, 1) + op * p.probe(x, 1)) / omega2;
}

}  // namespace darkpot
