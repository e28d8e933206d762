#include "mobius/commands.hpp"
#include "mobius/config.hpp"
#include "mobius/table.hpp"
#include "mobius/units.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace mobius;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "mobius_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string config_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("empty config applies the documented defaults") {
  const RunConfig c = parse_config("{}");
  const RingParams& p = c.medium.ring;
  CHECK(p.n_per_ring == 12);
  CHECK(p.v_inter == 3.6);
  CHECK(p.xi_intra == 3.6);
  CHECK(p.half_width == doctest::Approx(0.077e-9));
  CHECK(p.decay_rate == doctest::Approx(2.5e8));
  CHECK(p.topology == Topology::Mobius);
  CHECK(p.volume_convention == VolumeConvention::Cylinder4W);
  CHECK_FALSE(c.medium.lossy);
  CHECK(c.grid.theta_count == 256);
  CHECK(c.grid.omega_count == 512);
  CHECK(c.format == OutputFormat::Csv);
}

TEST_CASE("config values and unit conversions") {
  const RunConfig c = parse_config(
      R"({"N": 8, "gamma_inv_ns": 4, "W_nm": 0.1, "R_nm": 0.5, "topology": "single_ring", "lossy": true,
          "omega_center_eV": 0.001, "format": "json", "polarization": "H"})");
  CHECK(c.medium.ring.decay_rate == doctest::Approx(1.0 / 4e-9));
  CHECK(c.medium.ring.half_width == doctest::Approx(0.1e-9));
  CHECK(c.medium.ring.radius() == doctest::Approx(0.5e-9));
  CHECK(c.medium.ring.topology == Topology::SingleRing);
  CHECK(c.medium.lossy);
  CHECK(c.grid.omega_center == doctest::Approx(units::ev_to_rad_per_s(0.001)));
  CHECK(c.format == OutputFormat::Json);
  CHECK(c.polarization == Polarization::Hpol);
}

TEST_CASE("strict parsing names the offending key") {
  CHECK(config_error(R"({"N": 2})").find("n_per_ring must be >= 3") != std::string::npos);
  CHECK(config_error(R"({"N": 2})").find("'N'") != std::string::npos);
  CHECK(config_error(R"({"Nn": 12})").find("Nn") != std::string::npos);
  CHECK(config_error(R"({"V_eV": "big"})").find("V_eV") != std::string::npos);
  CHECK(config_error(R"({"gamma_inv_ns": 4, "gamma_per_s": 1})").find("gamma") != std::string::npos);
  CHECK(config_error(R"({"theta_count": 0})").find("theta_count") != std::string::npos);
  CHECK(config_error(R"({"omega_span_rad_s": -1})").find("omega_span_rad_s") != std::string::npos);
  CHECK(config_error(R"({"format": "xml"})").find("format") != std::string::npos);
  CHECK_FALSE(config_error("{not json").empty());
  CHECK_FALSE(config_error("[1, 2]").empty());
}

TEST_CASE("help text documents every key") {
  const std::string h = config_help();
  for (const char* key : {"N", "V_eV", "xi_eV", "eps_eV", "W_nm", "R_nm", "gamma_inv_ns", "gamma_per_s", "topology",
                          "volume_convention", "lossy", "polarization", "theta_min_deg", "theta_max_deg",
                          "theta_count", "omega_center_rad_s", "omega_center_eV", "omega_span_rad_s",
                          "omega_span_eV", "omega_count", "surface_detuning_rad_s", "surface_detuning_eV",
                          "surface_samples", "output", "format"}) {
    CHECK(h.find(key) != std::string::npos);
  }
}

TEST_CASE("float formatting round-trips") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(std::strtod(format_double(0.1).c_str(), nullptr) == 0.1);
  for (double x : {1.0 / 3.0, -7.4453, 1.1311453685025176e16, 5e-324, 2.5e8}) {
    CHECK(std::strtod(format_double(x).c_str(), nullptr) == x);
  }
}

TEST_CASE("tables: header-only csv, quoting, json nulls") {
  Table t;
  t.header = {"a", "b"};
  CHECK(to_csv(t) == "a,b\n");
  CHECK(to_json(t) == "[]\n");
  t.add({std::string("x,y"), std::nan("")});
  CHECK(to_csv(t) == "a,b\n\"x,y\",nan\n");
  const auto j = nlohmann::json::parse(to_json(t));
  CHECK(j[0]["a"] == "x,y");
  CHECK(j[0]["b"].is_null());
  CHECK_THROWS(t.add({std::int64_t(1)}));
}

TEST_CASE("spectrum command: 24 rows, minimum -10.8 eV") {
  const Table t = spectrum_table(parse_config("{}"));
  REQUIRE(t.rows.size() == 24);
  double lowest = 0.0;
  for (const auto& r : t.rows) lowest = std::min(lowest, std::get<double>(r[2]));
  CHECK(lowest == doctest::Approx(-10.8));
}

TEST_CASE("phase-diagram command with H polarization reports zero LH cells") {
  RunConfig c = parse_config(R"({"polarization": "H", "theta_count": 32, "omega_count": 128})");
  const CommandResult r = execute(Command::PhaseDiagram, c);
  CHECK(r.exit_code == 0);
  REQUIRE_FALSE(r.summary.empty());
  CHECK(r.summary.front().find("LH 0,") != std::string::npos);
  CHECK(r.body.rfind("omega_rad_s,theta_deg,class\n", 0) == 0);
}

TEST_CASE("validate command exits 0 and reports both lifetimes") {
  RunConfig c = parse_config(R"({"format": "json"})");
  const CommandResult r = execute(Command::Validate, c);
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.body);
  CHECK(j["pass"] == true);
  CHECK(j["quantities"].contains("tau_c_cylinder_4w_ns"));
  CHECK(j["quantities"].contains("tau_c_appendix_d_ns"));
}

TEST_CASE("every command produces identical bytes on repeated runs") {
  const RunConfig c = parse_config(R"({"theta_count": 16, "omega_count": 64})");
  for (Command cmd : {Command::Spectrum, Command::Elements, Command::Response, Command::PhaseDiagram,
                      Command::Surface, Command::Bandwidth, Command::Validate}) {
    CHECK(execute(cmd, c).body == execute(cmd, c).body);
  }
}

TEST_CASE("run_command writes atomically and maps errors to exit code 2") {
  const fs::path out = scratch("spectrum.csv");
  fs::remove(out);
  RunConfig c = parse_config("{}");
  c.output = out.string();
  std::ostringstream so, se;
  CHECK(run_command(Command::Spectrum, c, so, se) == 0);
  CHECK(so.str().empty());
  CHECK(slurp(out) == execute(Command::Spectrum, c).body);
  for (const auto& e : fs::directory_iterator(out.parent_path())) {
    CHECK(e.path().filename().string().find(".tmp.") == std::string::npos);
  }

  RunConfig bad = c;
  bad.output = (scratch("missing_dir") / "x" / "y.csv").string();
  std::ostringstream so2, se2;
  CHECK(run_command(Command::Spectrum, bad, so2, se2) == 2);
  CHECK(se2.str().find("y.csv") != std::string::npos);
  CHECK_FALSE(fs::exists(bad.output.value()));

  RunConfig invalid = parse_config("{}");
  invalid.medium.ring.half_width = -1.0;
  std::ostringstream so3, se3;
  CHECK(run_command(Command::Spectrum, invalid, so3, se3) == 2);
  CHECK(so3.str().empty());
}

TEST_CASE("elements command lists the resonant transition with its selection rule") {
  const Table t = elements_table(parse_config("{}"));
  bool found = false;
  for (const auto& r : t.rows) {
    if (std::get<std::string>(r[0]) == "electric" && std::get<std::int64_t>(r[1]) == 0 &&
        std::get<std::string>(r[2]) == "down" && std::get<std::int64_t>(r[3]) == 0 &&
        std::get<std::string>(r[4]) == "up") {
      found = std::get<std::string>(r[5]) == "xyz" && std::get<std::string>(r[6]) == "xyz";
    }
  }
  CHECK(found);
}

TEST_CASE("command names") {
  for (const char* n : {"spectrum", "elements", "response", "phase-diagram", "surface", "bandwidth", "validate"}) {
    REQUIRE(parse_command(n).has_value());
    CHECK(to_string(*parse_command(n)) == n);
  }
  CHECK_FALSE(parse_command("plot").has_value());
}
