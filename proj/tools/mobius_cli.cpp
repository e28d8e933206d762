#include "mobius/commands.hpp"
#include "mobius/config.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace {

std::string read_source(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) throw mobius::ConfigError("cannot read config file " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Negative refraction in Mobius molecules: spectra, dipole elements, response tensors, "
               "refraction phase diagrams and oracle validation."};
  app.footer("\nCommands: spectrum, elements, response, phase-diagram, surface, bandwidth, validate.\n"
             "Exit codes: 0 success, 1 validation failure, 2 configuration or I/O error.\n"
             "Phase-diagram cells: LH = -1, TR = 0, RH = +1, masked near-resonance bin = 2.\n\n" +
             mobius::config_help());
  app.require_subcommand(1);

  std::string config_path;
  std::string pol;
  std::string out_path;
  std::string format;

  const char* names[] = {"spectrum", "elements", "response", "phase-diagram", "surface", "bandwidth", "validate"};
  const char* docs[] = {
      "2N band energies (l, band, eV)",
      "all nonzero electric and magnetic dipole elements with polarization sets",
      "sweep of eta, eps1, mu1 and tensor entries over the omega grid",
      "theta x omega classification (LH/RH/TR)",
      "wave-vector surface samples and conic class",
      "bandwidth and critical lifetime under both volume conventions",
      "oracle validation report"};
  for (std::size_t i = 0; i < std::size(names); ++i) {
    CLI::App* sub = app.add_subcommand(names[i], docs[i]);
    sub->add_option("config", config_path, "JSON config file, '-' for stdin; defaults when omitted");
    sub->add_option("--pol", pol, "polarization override: E or H")->check(CLI::IsMember({"E", "H"}));
    sub->add_option("--out", out_path, "output path override");
    sub->add_option("--format", format, "output format override: csv or json")->check(CLI::IsMember({"csv", "json"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  const auto cmd = mobius::parse_command(name);

  mobius::RunConfig cfg;
  try {
    cfg = mobius::parse_config(config_path.empty() ? std::string("{}") : read_source(config_path));
  } catch (const mobius::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  if (!pol.empty()) cfg.polarization = pol == "H" ? mobius::Polarization::Hpol : mobius::Polarization::Epol;
  if (!out_path.empty()) cfg.output = out_path;
  if (!format.empty()) cfg.format = format == "json" ? mobius::OutputFormat::Json : mobius::OutputFormat::Csv;

  return mobius::run_command(*cmd, cfg, std::cout, std::cerr);
}
