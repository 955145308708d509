#include "darkpot/app/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "darkpot/constants.hpp"
#include "darkpot/errors.hpp"

namespace darkpot::app {

using nlohmann::json;

const char* to_string(Command c) {
  switch (c) {
    case Command::Profile: return "profile";
    case Command::Potential: return "potential";
    case Command::Features: return "features";
    case Command::BoundState: return "boundstate";
    case Command::Scan: return "scan";
    case Command::Experiment: return "experiment";
  }
  return "?";
}

namespace {

// Object reader that remembers which keys were consumed.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_ + ": expected an object");
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return j_.contains(key);
  }

  const json& raw(const std::string& key) {
    seen_.insert(key);
    return j_.at(key);
  }

  double number(const std::string& key, double fallback) {
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_number()) throw ConfigError(where(key) + ": expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(where(key) + ": must be finite");
    return x;
  }

  long integer(const std::string& key, long fallback) {
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_number_integer()) throw ConfigError(where(key) + ": expected an integer");
    return v.get<long>();
  }

  std::string text(const std::string& key, const std::string& fallback) {
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_string()) throw ConfigError(where(key) + ": expected a string");
    return v.get<std::string>();
  }

  std::vector<double> numbers(const std::string& key, std::vector<double> fallback) {
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_array()) throw ConfigError(where(key) + ": expected an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
      if (!e.is_number()) throw ConfigError(where(key) + ": expected an array of numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

  Section child(const std::string& key) { return Section(raw(key), where(key)); }

  std::string where(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) throw ConfigError("unknown key '" + where(it.key()) + "'");
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

std::size_t positive_size(Section& s, const std::string& key, std::size_t fallback, std::size_t min) {
  const long v = s.integer(key, static_cast<long>(fallback));
  if (v < static_cast<long>(min)) {
    throw ConfigError(s.where(key) + ": must be at least " + std::to_string(min));
  }
  return static_cast<std::size_t>(v);
}

WidthConvention parse_width(const std::string& s, const std::string& where) {
  if (s == "lt") return WidthConvention::LT;
  if (s == "sqrt2_lt") return WidthConvention::Sqrt2LT;
  throw ConfigError(where + ": expected 'lt' or 'sqrt2_lt'");
}

OffDiagonalForm parse_form(const std::string& s, const std::string& where) {
  if (s == "symmetrized") return OffDiagonalForm::Symmetrized;
  if (s == "cross") return OffDiagonalForm::Cross;
  throw ConfigError(where + ": expected 'symmetrized' or 'cross'");
}

int parse_order(Section& s) {
  const long o = s.integer("stencil_order", 2);
  if (o != 2 && o != 4) throw ConfigError(s.where("stencil_order") + ": must be 2 or 4");
  return static_cast<int>(o);
}

AtomSpecies parse_species(const json& j, const std::string& where) {
  if (j.is_string()) {
    if (j.get<std::string>() == "yb171") return AtomSpecies::ytterbium171();
    throw ConfigError(where + ": unknown species preset '" + j.get<std::string>() + "'");
  }
  Section s(j, where);
  const AtomSpecies yb = AtomSpecies::ytterbium171();
  const std::string name = s.text("name", "custom");
  const double mass_u = s.number("mass_u", yb.mass() / constants::atomic_mass_unit);
  const double gamma_khz = s.number("gamma_khz", yb.gamma() / (2.0 * constants::pi * 1e3));
  const double lambda_nm = s.number("lambda_nm", yb.lambda() * 1e9);
  const double mu = s.number("mu_nuclear_magnetons", yb.mu_max() / constants::nuclear_magneton);
  s.finish();
  try {
    return AtomSpecies(name, mass_u * constants::atomic_mass_unit, 2.0 * constants::pi * gamma_khz * 1e3,
                       lambda_nm * 1e-9, mu * constants::nuclear_magneton);
  } catch (const InvalidInput& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

ProfileSpec parse_profile(const json& j, const std::string& where, std::size_t index) {
  Section s(j, where);
  ProfileSpec p;
  p.label = s.text("label", "p" + std::to_string(index));
  const std::string kind = s.text("kind", "double_barrier");
  if (kind == "double_barrier") {
    p.kind = ProfileSpec::Kind::DoubleBarrier;
    p.epsilon = s.number("epsilon", 0.1);
    p.d = s.number("d", 0.0);
    p.phi = s.number("phi", 0.0);
  } else if (kind == "triple_barrier") {
    p.kind = ProfileSpec::Kind::TripleBarrier;
    p.phi = s.number("phi", 0.2);
  } else if (kind == "linear_approx") {
    p.kind = ProfileSpec::Kind::LinearApprox;
    p.epsilon = s.number("epsilon", 0.1);
    p.order = static_cast<int>(s.integer("order", 2));
  } else if (kind == "cosine") {
    p.kind = ProfileSpec::Kind::Cosine;
    p.coeffs.a = s.number("a", 1.0);
    p.coeffs.b = s.number("b", 0.0);
    p.coeffs.c = s.number("c", 1.0);
    p.coeffs.d = s.number("d", 0.0);
    p.coeffs.phi = s.number("phi", 0.0);
    p.omega_c = s.number("omega_c", 1.0);
    p.omega_p = s.number("omega_p", 1.0);
  } else {
    throw ConfigError(s.where("kind") + ": unknown profile kind '" + kind + "'");
  }
  s.finish();
  // Build once so invalid parameters surface as configuration errors.
  try {
    (void)p.build(1.0);
  } catch (const InvalidInput& e) {
    throw ConfigError(where + ": " + e.what());
  }
  return p;
}

Formats parse_formats_list(const std::vector<std::string>& items, const std::string& where) {
  Formats f{false, false, false};
  for (const auto& it : items) {
    if (it == "csv") f.csv = true;
    else if (it == "json") f.json = true;
    else if (it == "svg") f.svg = true;
    else throw ConfigError(where + ": unknown format '" + it + "'");
  }
  return f;
}

}  // namespace

FieldProfile ProfileSpec::build(double omega0_reduced) const {
  switch (kind) {
    case Kind::DoubleBarrier: return double_barrier(epsilon, d, phi, omega0_reduced);
    case Kind::TripleBarrier: return triple_barrier(phi, omega0_reduced);
    case Kind::LinearApprox: return linear_approx(epsilon, order, omega0_reduced);
    case Kind::Cosine: return FieldProfile::cosine(omega_c * omega0_reduced, omega_p * omega0_reduced, coeffs);
  }
  throw ConfigError("unknown profile kind");
}

double RunConfig::omega0_reduced() const {
  return si_to_reduced(radians_per_second(omega0_rad_s), QuantityKind::Frequency, species);
}

Formats parse_formats(const std::string& list) {
  std::vector<std::string> items;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) items.push_back(item);
  }
  return parse_formats_list(items, "--format");
}

RunConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed configuration: ") + e.what());
  }
  Section s(root, "");
  RunConfig c;

  const std::string cmd = s.text("command", "");
  if (cmd == "profile") c.command = Command::Profile;
  else if (cmd == "potential") c.command = Command::Potential;
  else if (cmd == "features") c.command = Command::Features;
  else if (cmd == "boundstate") c.command = Command::BoundState;
  else if (cmd == "scan") c.command = Command::Scan;
  else if (cmd == "experiment") c.command = Command::Experiment;
  else throw ConfigError("command: expected one of profile, potential, features, boundstate, scan, experiment");

  if (s.has("species")) c.species = parse_species(s.raw("species"), "species");
  c.omega0_rad_s = 2.0 * constants::pi * 1e6 * s.number("omega0_mhz", 100.0);
  if (!(c.omega0_rad_s > 0.0)) throw ConfigError("omega0_mhz: must be > 0");
  c.delta = s.number("delta", 0.0);
  c.validity_threshold = s.number("validity_threshold", 0.2);
  if (!(c.validity_threshold > 0.0)) throw ConfigError("validity_threshold: must be > 0");
  c.seed = static_cast<std::uint64_t>(s.integer("seed", static_cast<long>(c.seed)));
  const long threads = s.integer("threads", 1);
  if (threads < 1) throw ConfigError("threads: must be >= 1");
  c.threads = static_cast<unsigned>(threads);

  if (s.has("profiles")) {
    const json& arr = s.raw("profiles");
    if (!arr.is_array()) throw ConfigError("profiles: expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      c.profiles.push_back(parse_profile(arr[i], "profiles[" + std::to_string(i) + "]", i));
    }
  }

  if (s.has("grid")) {
    Section g = s.child("grid");
    c.axis.x_min = g.number("x_min", c.axis.x_min);
    c.axis.x_max = g.number("x_max", c.axis.x_max);
    c.axis.n = positive_size(g, "n", c.axis.n, 3);
    g.finish();
    if (!(c.axis.x_max > c.axis.x_min)) throw ConfigError("grid: x_max must exceed x_min");
  }

  if (s.has("window")) {
    const std::vector<double> w = s.numbers("window", {});
    if (w.size() != 2 || !(w[1] > w[0])) throw ConfigError("window: expected [lo, hi] with lo < hi");
    c.window = std::make_pair(w[0], w[1]);
  }

  if (s.has("boundstate")) {
    Section b = s.child("boundstate");
    BoundStateSpec& bs = c.bound_state;
    bs.epsilon = b.number("epsilon", bs.epsilon);
    bs.d = b.number("d", bs.d);
    bs.phi = b.number("phi", bs.phi);
    bs.l_t_factor = b.number("l_t_factor", bs.l_t_factor);
    if (b.has("a_dd")) {
      const json& a = b.raw("a_dd");
      if (a.is_string() && a.get<std::string>() == "min") {
        bs.a_dd.reset();
      } else if (a.is_number() && a.get<double>() >= 0.0) {
        bs.a_dd = a.get<double>();
      } else {
        throw ConfigError("boundstate.a_dd: expected a length >= 0 (wavelengths) or \"min\"");
      }
    }
    bs.n = positive_size(b, "n", bs.n, 5);
    bs.stencil_order = parse_order(b);
    bs.width = parse_width(b.text("width", "lt"), "boundstate.width");
    bs.form = parse_form(b.text("off_diagonal", "symmetrized"), "boundstate.off_diagonal");
    bs.rel_tol = b.number("rel_tol", bs.rel_tol);
    b.finish();
    if (!(bs.epsilon > 0.0) || bs.l_t_factor < 0.0 || !(bs.rel_tol > 0.0)) {
      throw ConfigError("boundstate: need epsilon > 0, l_t_factor >= 0, rel_tol > 0");
    }
  }

  if (s.has("scan")) {
    Section b = s.child("scan");
    ScanSpec& sc = c.scan;
    sc.epsilons = b.numbers("epsilons", {});
    sc.d = b.number("d", sc.d);
    sc.phi = b.number("phi", sc.phi);
    sc.l_t_factors = b.numbers("l_t_factors", sc.l_t_factors);
    sc.n = positive_size(b, "n", sc.n, 5);
    sc.stencil_order = parse_order(b);
    sc.width = parse_width(b.text("width", "lt"), "scan.width");
    sc.form = parse_form(b.text("off_diagonal", "symmetrized"), "scan.off_diagonal");
    sc.rel_tol = b.number("rel_tol", sc.rel_tol);
    b.finish();
    for (double e : sc.epsilons) {
      if (!(e > 0.0) || !(e < 1.0)) throw ConfigError("scan.epsilons: each value must lie in (0, 1)");
    }
    for (double l : sc.l_t_factors) {
      if (l < 0.0) throw ConfigError("scan.l_t_factors: must be >= 0");
    }
  }

  if (s.has("design")) {
    Section d = s.child("design");
    c.design_kinds.clear();
    const json& kinds = d.raw("kinds");
    if (!kinds.is_array()) throw ConfigError("design.kinds: expected an array");
    for (const auto& k : kinds) {
      if (k == "double") c.design_kinds.push_back(BarrierKind::Double);
      else if (k == "triple") c.design_kinds.push_back(BarrierKind::Triple);
      else throw ConfigError("design.kinds: expected 'double' or 'triple'");
    }
    d.finish();
  }

  if (s.has("formats")) {
    const json& f = s.raw("formats");
    if (!f.is_array()) throw ConfigError("formats: expected an array");
    std::vector<std::string> items;
    for (const auto& e : f) {
      if (!e.is_string()) throw ConfigError("formats: expected strings");
      items.push_back(e.get<std::string>());
    }
    c.formats = parse_formats_list(items, "formats");
  }

  s.finish();

  const bool needs_profiles = c.command == Command::Profile || c.command == Command::Potential ||
                              c.command == Command::Features;
  if (needs_profiles && c.profiles.empty()) throw ConfigError("profiles: at least one profile is required");
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read configuration file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace darkpot::app
