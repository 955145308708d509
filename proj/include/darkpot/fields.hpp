#pragma once

#include <utility>
#include <vector>

namespace darkpot {

enum class ProfileShape { CosineSeries, PolynomialWindow };

// Omega_c(x) = omega0_c (a + b cos kx),  Omega_p(x) = omega0_p (c + d cos(kx + phi)).
struct CosineCoefficients {
  double a = 1.0;
  double b = 0.0;
  double c = 1.0;
  double d = 0.0;
  double phi = 0.0;
};

// Spatial Rabi-frequency pair of a Lambda scheme. Frequencies are in units of
// E_R/hbar and positions in units of 1/k unless k != 1 is supplied.
//
// Two shapes exist: the rational cosine series used for every multi-barrier
// geometry, and a polynomial window Omega_c = omega0 (kx)^n, Omega_p = omega0 eps
// (valid for |kx| <= 1) reproducing f = (kx)^n / eps.
class FieldProfile {
 public:
  // Validated: requires Omega(x) > 0 everywhere and, unless
  // allow_sign_changes is set, a >= |b| and c >= |d|.
  static FieldProfile cosine(double omega0_c, double omega0_p, CosineCoefficients coeffs,
                             double k = 1.0, bool allow_sign_changes = false);
  // No validation; for probing removable singular points.
  static FieldProfile cosine_unchecked(double omega0_c, double omega0_p,
                                       CosineCoefficients coeffs, double k = 1.0);
  static FieldProfile polynomial_window(double omega0, double epsilon, int order, double k = 1.0);

  ProfileShape shape() const { return shape_; }
  double omega0_c() const { return omega0_c_; }
  double omega0_p() const { return omega0_p_; }
  const CosineCoefficients& coefficients() const { return coeffs_; }
  double k() const { return k_; }
  int order() const { return order_; }

  bool periodic() const { return shape_ == ProfileShape::CosineSeries; }
  double period() const;
  // Closed interval on which the profile may be evaluated.
  std::pair<double, double> domain() const;

  // Field value or its first/second spatial derivative.
  double coupling(double x, int derivative = 0) const;
  double probe(double x, int derivative = 0) const;

  // Both Rabi scales multiplied by factor; f, alpha and U0 are unchanged.
  FieldProfile scaled(double factor) const;

  // Throws InvalidInput when Omega vanishes somewhere in the domain.
  void validate() const;

 private:
  FieldProfile() = default;
  void check_in_domain(double x) const;
  double magnitude_scale() const;

  ProfileShape shape_ = ProfileShape::CosineSeries;
  double omega0_c_ = 1.0;
  double omega0_p_ = 1.0;
  CosineCoefficients coeffs_{};
  double k_ = 1.0;
  int order_ = 1;
};

// Named geometries with their own parameter constraints.
struct ProfilePreset {
  enum class Kind { DoubleBarrier, TripleBarrier, LinearApprox };

  Kind kind = Kind::DoubleBarrier;
  double epsilon = 0.1;  // DoubleBarrier, LinearApprox
  double d = 0.0;        // DoubleBarrier, 0 <= d < 1
  double phi = 0.0;      // DoubleBarrier, TripleBarrier (0 < phi < pi)
  int order = 1;         // LinearApprox, n >= 1

  static ProfilePreset double_barrier(double epsilon, double d = 0.0, double phi = 0.0);
  static ProfilePreset triple_barrier(double phi);
  static ProfilePreset linear_approx(double epsilon, int order);

  // Throws InvalidInput on violated constraints.
  void validate() const;
  FieldProfile build(double omega0 = 1.0, double k = 1.0) const;
};

// Omega_c = Omega0 (1 + cos kx), Omega_p = Omega0 eps (1 + d cos(kx + phi)).
FieldProfile double_barrier(double epsilon, double d = 0.0, double phi = 0.0,
                            double omega0 = 1.0, double k = 1.0);
// Omega_c = Omega0 (1 + cos kx), Omega_p = Omega0 (1 + cos(kx + phi)).
FieldProfile triple_barrier(double phi, double omega0 = 1.0, double k = 1.0);
FieldProfile linear_approx(double epsilon, int order, double omega0 = 1.0, double k = 1.0);

double rabi_coupling(double x, const FieldProfile& p);
double rabi_probe(double x, const FieldProfile& p);

// f = Omega_c / Omega_p. A probe zero with finite coupling returns +-infinity;
// a common zero is resolved by L'Hopital on the series derivatives, and
// throws InvalidInput when that limit does not exist.
double ratio(double x, const FieldProfile& p);

// alpha = arctan f on the branch [0, pi/2] for f >= 0; poles map to pi/2.
double mixing_angle(double x, const FieldProfile& p);
// Pointwise angles shifted by multiples of pi so the sequence is continuous.
std::vector<double> mixing_angle_unwrapped(const std::vector<double>& xs, const FieldProfile& p);

// alpha' = (Omega_c' Omega_p - Omega_c Omega_p') / Omega^2, with the analytic
// limit at common zeros of both fields.
double alpha_prime(double x, const FieldProfile& p);

double omega_norm(double x, const FieldProfile& p);
// Omega'/Omega; throws InvalidInput where Omega = 0.
double log_derivative(double x, const FieldProfile& p);

}  // namespace darkpot
