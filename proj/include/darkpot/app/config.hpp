#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "darkpot/bound_state.hpp"
#include "darkpot/design.hpp"
#include "darkpot/fields.hpp"
#include "darkpot/interactions.hpp"
#include "darkpot/units.hpp"

namespace darkpot::app {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Command { Profile, Potential, Features, BoundState, Scan, Experiment };

const char* to_string(Command c);

struct ProfileSpec {
  std::string label;
  enum class Kind { DoubleBarrier, TripleBarrier, LinearApprox, Cosine } kind = Kind::DoubleBarrier;
  double epsilon = 0.1;
  double d = 0.0;
  double phi = 0.0;
  int order = 2;
  CosineCoefficients coeffs{};
  double omega_c = 1.0;  // reduced scales for the raw cosine form
  double omega_p = 1.0;

  FieldProfile build(double omega0_reduced) const;
};

struct AxisSpec {
  double x_min = 0.0;  // wavelengths
  double x_max = 1.0;
  std::size_t n = 4001;
};

struct BoundStateSpec {
  double epsilon = 0.1;
  double d = 0.0;
  double phi = 0.0;
  double l_t_factor = 0.0;    // l_T in units of sqrt(eps) lambda
  std::optional<double> a_dd;  // wavelengths; unset means search a_dd_min
  std::size_t n = 200;
  int stencil_order = 2;
  WidthConvention width = WidthConvention::LT;
  OffDiagonalForm form = OffDiagonalForm::Symmetrized;
  double rel_tol = 1e-2;
};

struct ScanSpec {
  std::vector<double> epsilons;
  double d = 0.0;
  double phi = 0.0;
  std::vector<double> l_t_factors{0.0};
  std::size_t n = 200;
  int stencil_order = 2;
  WidthConvention width = WidthConvention::LT;
  OffDiagonalForm form = OffDiagonalForm::Symmetrized;
  double rel_tol = 1e-2;
};

struct Formats {
  bool csv = true;
  bool json = true;
  bool svg = false;
};

struct RunConfig {
  Command command = Command::Profile;
  AtomSpecies species = AtomSpecies::ytterbium171();
  double omega0_rad_s = 2.0 * 3.14159265358979323846 * 100e6;
  double delta = 0.0;                 // E_R / hbar
  double validity_threshold = 0.2;
  std::vector<ProfileSpec> profiles;
  AxisSpec axis;
  std::optional<std::pair<double, double>> window;  // wavelengths
  BoundStateSpec bound_state;
  ScanSpec scan;
  std::vector<BarrierKind> design_kinds{BarrierKind::Double, BarrierKind::Triple};
  Formats formats;
  std::uint64_t seed = 20240611;
  unsigned threads = 1;

  double omega0_reduced() const;
};

// Parses JSON (comments allowed). Unknown keys and ill-typed values throw
// ConfigError before any computation.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

Formats parse_formats(const std::string& list);

}  // namespace darkpot::app
