#include "mobius/config.hpp"

#include "mobius/units.hpp"

#include <json.hpp>

#include <cmath>
#include <functional>
#include <map>
#include <sstream>

namespace mobius {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& key, const std::string& what) {
  throw ConfigError("config key '" + key + "': " + what);
}

double number(const json& v, const std::string& key) {
  if (!v.is_number()) fail(key, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(key, "must be finite");
  return x;
}

double positive(const json& v, const std::string& key) {
  const double x = number(v, key);
  if (!(x > 0.0)) fail(key, "must be > 0");
  return x;
}

int integer(const json& v, const std::string& key) {
  if (!v.is_number_integer()) fail(key, "expected an integer");
  const auto x = v.get<long long>();
  if (x < -2147483647LL || x > 2147483647LL) fail(key, "out of range");
  return static_cast<int>(x);
}

int count(const json& v, const std::string& key) {
  const int x = integer(v, key);
  if (x < 1) fail(key, "must be >= 1");
  return x;
}

bool boolean(const json& v, const std::string& key) {
  if (!v.is_boolean()) fail(key, "expected true or false");
  return v.get<bool>();
}

std::string text(const json& v, const std::string& key) {
  if (!v.is_string()) fail(key, "expected a string");
  return v.get<std::string>();
}

struct KeyDoc {
  const char* key;
  const char* unit;
  const char* def;
  const char* doc;
};

constexpr KeyDoc kKeys[] = {
    {"N", "count", "12", "sites per ring (n_per_ring), >= 3"},
    {"V_eV", "eV", "3.6", "inter-ring resonance integral V"},
    {"xi_eV", "eV", "3.6", "intra-ring resonance integral xi"},
    {"eps_eV", "eV", "0", "on-site energy epsilon (dense oracle only)"},
    {"W_nm", "nm", "0.077", "half width W of the ribbon"},
    {"R_nm", "nm", "N W / pi", "ring radius R"},
    {"gamma_inv_ns", "ns", "4", "excited-state lifetime 1/gamma (exclusive with gamma_per_s)"},
    {"gamma_per_s", "1/s", "2.5e8", "decay rate gamma, >= 0"},
    {"topology", "-", "mobius", "mobius | double_ring_periodic | single_ring"},
    {"volume_convention", "-", "cylinder_4w", "cylinder_4w (pi (R+W)^2 4W) | appendix_d (2 pi (R+W)^2 W)"},
    {"lossy", "bool", "false", "use complex eta instead of its real part"},
    {"polarization", "-", "E", "E | H, for phase-diagram and surface"},
    {"theta_min_deg", "deg", "0", "first incidence angle"},
    {"theta_max_deg", "deg", "89", "last incidence angle, < 90"},
    {"theta_count", "count", "256", "incidence angles"},
    {"omega_center_rad_s", "rad/s", "0", "grid centre as detuning from Delta_{0,up}"},
    {"omega_center_eV", "eV", "0", "same, in eV (exclusive with omega_center_rad_s)"},
    {"omega_span_rad_s", "rad/s", "20 B", "full grid width (B = negative-mu bandwidth)"},
    {"omega_span_eV", "eV", "20 B", "same, in eV (exclusive with omega_span_rad_s)"},
    {"omega_count", "count", "512", "frequencies"},
    {"surface_detuning_rad_s", "rad/s", "window centre", "detuning for the surface command"},
    {"surface_detuning_eV", "eV", "window centre", "same, in eV"},
    {"surface_samples", "count", "201", "n_ty samples per branch"},
    {"output", "path", "stdout", "output file, written atomically"},
    {"format", "-", "csv", "csv | json"},
};

void exclusive(const json& doc, const char* a, const char* b) {
  if (doc.contains(a) && doc.contains(b)) {
    throw ConfigError(std::string("config keys '") + a + "' and '" + b + "' are mutually exclusive");
  }
}

}  // namespace

RunConfig parse_config(std::string_view input) {
  json doc;
  try {
    doc = json::parse(input.begin(), input.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  std::map<std::string, bool> known;
  for (const auto& k : kKeys) known[k.key] = true;
  for (const auto& [key, value] : doc.items()) {
    if (!known.count(key)) throw ConfigError("config key '" + key + "': unknown key");
  }
  exclusive(doc, "gamma_inv_ns", "gamma_per_s");
  exclusive(doc, "omega_center_rad_s", "omega_center_eV");
  exclusive(doc, "omega_span_rad_s", "omega_span_eV");
  exclusive(doc, "surface_detuning_rad_s", "surface_detuning_eV");

  RunConfig cfg;
  RingParams& p = cfg.medium.ring;
  for (const auto& [key, v] : doc.items()) {
    if (key == "N") {
      p.n_per_ring = integer(v, key);
      if (p.n_per_ring < 3) fail(key, "n_per_ring must be >= 3");
    } else if (key == "V_eV") {
      p.v_inter = number(v, key);
    } else if (key == "xi_eV") {
      p.xi_intra = number(v, key);
    } else if (key == "eps_eV") {
      p.eps_onsite = number(v, key);
    } else if (key == "W_nm") {
      p.half_width = positive(v, key) * units::nm;
    } else if (key == "R_nm") {
      p.radius_override = positive(v, key) * units::nm;
    } else if (key == "gamma_inv_ns") {
      p.decay_rate = 1.0 / (positive(v, key) * units::ns);
    } else if (key == "gamma_per_s") {
      p.decay_rate = number(v, key);
      if (p.decay_rate < 0.0) fail(key, "must be >= 0");
    } else if (key == "topology") {
      const std::string s = text(v, key);
      if (s == "mobius") p.topology = Topology::Mobius;
      else if (s == "double_ring_periodic") p.topology = Topology::DoubleRingPeriodic;
      else if (s == "single_ring") p.topology = Topology::SingleRing;
      else fail(key, "expected mobius, double_ring_periodic or single_ring");
    } else if (key == "volume_convention") {
      const std::string s = text(v, key);
      if (s == "cylinder_4w") p.volume_convention = VolumeConvention::Cylinder4W;
      else if (s == "appendix_d") p.volume_convention = VolumeConvention::AppendixD;
      else fail(key, "expected cylinder_4w or appendix_d");
    } else if (key == "lossy") {
      cfg.medium.lossy = boolean(v, key);
    } else if (key == "polarization") {
      const std::string s = text(v, key);
      if (s == "E") cfg.polarization = Polarization::Epol;
      else if (s == "H") cfg.polarization = Polarization::Hpol;
      else fail(key, "expected E or H");
    } else if (key == "theta_min_deg") {
      cfg.grid.theta_min_deg = number(v, key);
    } else if (key == "theta_max_deg") {
      cfg.grid.theta_max_deg = number(v, key);
    } else if (key == "theta_count") {
      cfg.grid.theta_count = count(v, key);
    } else if (key == "omega_center_rad_s") {
      cfg.grid.omega_center = number(v, key);
    } else if (key == "omega_center_eV") {
      cfg.grid.omega_center = units::ev_to_rad_per_s(number(v, key));
    } else if (key == "omega_span_rad_s") {
      cfg.grid.omega_span = positive(v, key);
    } else if (key == "omega_span_eV") {
      cfg.grid.omega_span = units::ev_to_rad_per_s(positive(v, key));
    } else if (key == "omega_count") {
      cfg.grid.omega_count = count(v, key);
    } else if (key == "surface_detuning_rad_s") {
      cfg.surface_detuning = number(v, key);
    } else if (key == "surface_detuning_eV") {
      cfg.surface_detuning = units::ev_to_rad_per_s(number(v, key));
    } else if (key == "surface_samples") {
      cfg.surface_samples = count(v, key);
    } else if (key == "output") {
      cfg.output = text(v, key);
      if (cfg.output->empty()) fail(key, "must not be empty");
    } else if (key == "format") {
      const std::string s = text(v, key);
      if (s == "csv") cfg.format = OutputFormat::Csv;
      else if (s == "json") cfg.format = OutputFormat::Json;
      else fail(key, "expected csv or json");
    }
  }

  if (cfg.grid.theta_min_deg < 0.0) fail("theta_min_deg", "must be >= 0");
  if (cfg.grid.theta_max_deg >= 90.0) fail("theta_max_deg", "must be < 90");
  if (cfg.grid.theta_max_deg < cfg.grid.theta_min_deg) fail("theta_max_deg", "must be >= theta_min_deg");
  if (cfg.grid.theta_count > 1 && cfg.grid.theta_max_deg == cfg.grid.theta_min_deg) {
    fail("theta_count", "must be 1 when theta_min_deg == theta_max_deg");
  }
  try {
    validate(p, true);
  } catch (const InvalidParams& e) {
    throw ConfigError(std::string("invalid molecule: ") + e.what());
  }
  return cfg;
}

std::string config_help() {
  std::ostringstream out;
  out << "Configuration keys (JSON object; unknown keys are rejected):\n";
  for (const auto& k : kKeys) {
    out << "  " << k.key;
    for (std::size_t i = std::string_view(k.key).size(); i < 24; ++i) out << ' ';
    out << "[" << k.unit << ", default " << k.def << "] " << k.doc << "\n";
  }
  return out.str();
}

std::vector<double> theta_grid(const RunConfig& cfg) {
  const double d2r = units::pi / 180.0;
  return linspace(cfg.grid.theta_min_deg * d2r, cfg.grid.theta_max_deg * d2r,
                  static_cast<std::size_t>(cfg.grid.theta_count));
}

std::vector<double> omega_grid(const RunConfig& cfg) {
  const double delta = resonance_frequency(cfg.medium);
  double span = cfg.grid.omega_span.value_or(20.0 * bandwidth(cfg.medium));
  if (!(span > 0.0)) span = 20.0 * std::max(cfg.medium.ring.decay_rate, 1.0);
  const double centre = delta + cfg.grid.omega_center;
  if (cfg.grid.omega_count == 1) return {centre};
  return linspace(centre - span / 2.0, centre + span / 2.0, static_cast<std::size_t>(cfg.grid.omega_count));
}

double surface_omega(const RunConfig& cfg) {
  if (cfg.surface_detuning) return resonance_frequency(cfg.medium) + *cfg.surface_detuning;
  const auto [lo, hi] = negative_mu_window(cfg.medium);
  if (std::isnan(lo)) return resonance_frequency(cfg.medium) + 10.0 * std::max(cfg.medium.ring.decay_rate, 1.0);
  return 0.5 * (lo + hi);
}

}  // namespace mobius
