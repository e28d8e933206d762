#pragma once

#include "mobius/config.hpp"
#include "mobius/table.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mobius {

enum class Command { Spectrum, Elements, Response, PhaseDiagram, Surface, Bandwidth, Validate };

std::optional<Command> parse_command(const std::string& name);
std::string to_string(Command c);

struct CommandResult {
  int exit_code = 0;
  std::string body;                   // bytes destined for the output file or stdout
  std::vector<std::string> summary;   // human-readable lines for stderr
};

Table spectrum_table(const RunConfig& cfg);
Table elements_table(const RunConfig& cfg);
Table response_table(const RunConfig& cfg);
Table phase_diagram_table(const PhaseDiagram& pd);
Table surface_table(const WaveVectorSurface& s);
Table bandwidth_table(const RunConfig& cfg);

/// Computes the command's output. Exit code 1 only for a failed validation.
CommandResult execute(Command cmd, const RunConfig& cfg);

/// execute() plus delivery: atomic write to cfg.output or `out`, summary to
/// `err`. Maps ConfigError / InvalidParams / UnsupportedRegime and I/O
/// failures to exit code 2.
int run_command(Command cmd, const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace mobius
