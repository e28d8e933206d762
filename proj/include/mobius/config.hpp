#pragma once

#include "mobius/refraction.hpp"
#include "mobius/response.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mobius {

/// Raised for malformed or out-of-range configuration; the CLI maps it to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { Csv, Json };

struct GridSpec {
  double theta_min_deg = 0.0;
  double theta_max_deg = 89.0;
  int theta_count = 256;
  double omega_center = 0.0;               // detuning from Delta_{0,Up}, rad/s
  std::optional<double> omega_span;        // full width, rad/s; default 20 B
  int omega_count = 512;
};

struct RunConfig {
  MediumConfig medium;
  Polarization polarization = Polarization::Epol;
  GridSpec grid;
  std::optional<double> surface_detuning;  // rad/s; default centre of the mu1 < 0 window
  int surface_samples = 201;
  std::optional<std::string> output;       // path; stdout when absent
  OutputFormat format = OutputFormat::Csv;
};

/// Strict JSON parsing: unknown keys, wrong types and out-of-range values
/// throw ConfigError naming the key. Missing keys take the documented defaults.
RunConfig parse_config(std::string_view text);

/// Help text listing every key, unit and default.
std::string config_help();

std::vector<double> theta_grid(const RunConfig& cfg);   // rad
std::vector<double> omega_grid(const RunConfig& cfg);   // absolute rad/s
double surface_omega(const RunConfig& cfg);             // absolute rad/s

}  // namespace mobius
