#include "mobius/commands.hpp"

#include "mobius/dipole.hpp"
#include "mobius/oracle.hpp"
#include "mobius/units.hpp"

#include <json.hpp>

#include <cmath>
#include <ostream>
#include <sstream>

namespace mobius {

namespace {

using cd = std::complex<double>;

std::string emit(const Table& t, OutputFormat f) { return f == OutputFormat::Csv ? to_csv(t) : to_json(t); }

std::string band_name(Band b) { return to_string(b); }

std::int64_t as_int(int x) { return static_cast<std::int64_t>(x); }

void add_tensor_columns(std::vector<std::string>& header, const std::string& prefix) {
  for (const char* e : {"xx", "yy", "yz", "zz"}) {
    header.push_back(prefix + "_" + e + "_re");
    header.push_back(prefix + "_" + e + "_im");
  }
}

void add_tensor_cells(std::vector<Cell>& row, const Eigen::Matrix3cd& m) {
  for (const auto& [i, j] : {std::pair{0, 0}, std::pair{1, 1}, std::pair{1, 2}, std::pair{2, 2}}) {
    row.emplace_back(m(i, j).real());
    row.emplace_back(m(i, j).imag());
  }
}

// Numeric zeros of mu1(omega) by bisection on each side of the peak of eta'.
std::pair<double, double> numeric_mu_zeros(const MediumConfig& cfg) {
  const AlphaBeta ab = alpha_beta(cfg);
  const double s = ab.alpha * ab.alpha + 4.0 * ab.beta * ab.beta;
  const double delta = resonance_frequency(cfg);
  const double g = cfg.ring.decay_rate;
  auto mu1 = [&](double x) { return 1.0 - s * eta(cfg, delta + x).value.real(); };
  auto bisect = [&](double a, double b) {
    double fa = mu1(a);
    for (int i = 0; i < 300; ++i) {
      const double m = 0.5 * (a + b);
      if (m == a || m == b) break;
      const double fm = mu1(m);
      if ((fm > 0) == (fa > 0)) {
        a = m;
        fa = fm;
      } else {
        b = m;
      }
    }
    return 0.5 * (a + b);
  };
  const double peak = std::max(g, 1e-300);  // eta' is maximal at x = gamma
  const double far = 10.0 * s * eta_prefactor(cfg);
  return {delta + bisect(peak * 1e-12, peak), delta + bisect(peak, far)};
}

nlohmann::json report_json(const ValidationReport& rep) {
  nlohmann::json j;
  j["pass"] = rep.pass();
  nlohmann::json checks = nlohmann::json::array();
  for (const Check& c : rep.checks) {
    checks.push_back({{"name", c.name}, {"value", c.value}, {"threshold", c.threshold}, {"pass", c.pass},
                      {"note", c.note}});
  }
  j["checks"] = checks;
  j["quantities"] = rep.quantities;
  j["notes"] = rep.notes;
  return j;
}

}  // namespace

std::optional<Command> parse_command(const std::string& name) {
  if (name == "spectrum") return Command::Spectrum;
  if (name == "elements") return Command::Elements;
  if (name == "response") return Command::Response;
  if (name == "phase-diagram") return Command::PhaseDiagram;
  if (name == "surface") return Command::Surface;
  if (name == "bandwidth") return Command::Bandwidth;
  if (name == "validate") return Command::Validate;
  return std::nullopt;
}

std::string to_string(Command c) {
  switch (c) {
    case Command::Spectrum: return "spectrum";
    case Command::Elements: return "elements";
    case Command::Response: return "response";
    case Command::PhaseDiagram: return "phase-diagram";
    case Command::Surface: return "surface";
    case Command::Bandwidth: return "bandwidth";
    case Command::Validate: return "validate";
  }
  return "?";
}

Table spectrum_table(const RunConfig& cfg) {
  const RingParams& p = cfg.medium.ring;
  Table t;
  t.header = {"l", "band", "energy_eV"};
  if (p.topology == Topology::Mobius && p.eps_onsite == 0.0) {
    for (const EigenLabel& label : all_labels(p.n_per_ring)) {
      t.add({as_int(label.l), band_name(label.band), band_energy(p, label)});
    }
    return t;
  }
  const NumericEigensystem es = numeric_eigensystem(build_hamiltonian(p));
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    t.add({static_cast<std::int64_t>(i), std::string("numeric"), es.values[i]});
  }
  return t;
}

Table elements_table(const RunConfig& cfg) {
  const RingParams& p = cfg.medium.ring;
  const int n = p.n_per_ring;
  Table t;
  t.header = {"kind", "from_l", "from_band", "to_l", "to_band", "polarizations", "selection_rule",
              "x_re", "x_im", "y_re", "y_im", "z_re", "z_im"};
  const auto labels = all_labels(n);
  for (DipoleKind kind : {DipoleKind::Electric, DipoleKind::Magnetic}) {
    const double scale = kind == DipoleKind::Electric ? electric_scale(p) : magnetic_scale(p);
    for (const EigenLabel& from : labels) {
      for (const EigenLabel& to : labels) {
        const TransitionElement el =
            kind == DipoleKind::Electric ? electric_element(p, from, to) : magnetic_element(p, from, to);
        const PolarizationSet nz = nonzero_components(el.vector, scale);
        if (nz.empty()) continue;
        const PolarizationSet rule =
            kind == DipoleKind::Electric ? electric_selection(from, to, n) : magnetic_selection(from, to, n);
        std::vector<Cell> row{std::string(kind == DipoleKind::Electric ? "electric" : "magnetic"),
                              as_int(from.l), band_name(from.band), as_int(to.l), band_name(to.band),
                              to_string(nz), to_string(rule)};
        for (int c = 0; c < 3; ++c) {
          row.emplace_back(el.vector[c].real());
          row.emplace_back(el.vector[c].imag());
        }
        t.add(std::move(row));
      }
    }
  }
  return t;
}

Table response_table(const RunConfig& cfg) {
  Table t;
  t.header = {"detuning_rad_s", "detuning_eV", "omega_rad_s", "eta_re", "eta_im", "eps1", "mu1"};
  add_tensor_columns(t.header, "eps");
  add_tensor_columns(t.header, "mu");
  t.header.push_back("near_resonance");
  const double delta = resonance_frequency(cfg.medium);
  for (double w : omega_grid(cfg)) {
    const ResponseTensors r = response_tensors(cfg.medium, w);
    std::vector<Cell> row{w - delta, units::rad_per_s_to_ev(w - delta), w, r.eta.real(), r.eta.imag(),
                          r.eps1, r.mu1};
    add_tensor_cells(row, r.eps_r);
    add_tensor_cells(row, r.mu_r);
    row.emplace_back(r.near_resonance);
    t.add(std::move(row));
  }
  return t;
}

Table phase_diagram_table(const PhaseDiagram& pd) {
  Table t;
  t.header = {"omega_rad_s", "theta_deg", "class"};
  for (std::size_t i = 0; i < pd.omega.size(); ++i) {
    for (std::size_t j = 0; j < pd.theta.size(); ++j) {
      t.add({pd.omega[i], pd.theta[j] * 180.0 / units::pi, static_cast<std::int64_t>(pd.at(i, j))});
    }
  }
  return t;
}

Table surface_table(const WaveVectorSurface& s) {
  Table t;
  t.header = {"n_ty", "n_tz", "branch", "causal", "normal_y", "normal_z", "S_ty", "S_tz"};
  for (const SurfacePoint& p : s.points) {
    t.add({p.n_ty, p.n_tz, as_int(p.branch), p.causal, p.normal_dir[0], p.normal_dir[1], p.poynting[0],
           p.poynting[1]});
  }
  return t;
}

Table bandwidth_table(const RunConfig& cfg) {
  Table t;
  t.header = {"volume_convention", "selected", "volume_m3", "eta_prefactor_rad_s", "bandwidth_rad_s", "tau_c_ns",
              "mu_window_lo_rad_s", "mu_window_hi_rad_s"};
  for (VolumeConvention v : {VolumeConvention::AppendixD, VolumeConvention::Cylinder4W}) {
    MediumConfig m = cfg.medium;
    m.ring.volume_convention = v;
    const auto [lo, hi] = negative_mu_window(m);
    t.add({to_string(v), v == cfg.medium.ring.volume_convention, molecular_volume(m), eta_prefactor(m), bandwidth(m),
           critical_lifetime(m) / units::ns, lo, hi});
  }
  return t;
}

CommandResult execute(Command cmd, const RunConfig& cfg) {
  CommandResult res;
  switch (cmd) {
    case Command::Spectrum: {
      const Table t = spectrum_table(cfg);
      res.body = emit(t, cfg.format);
      res.summary.push_back("states: " + std::to_string(t.rows.size()));
      break;
    }
    case Command::Elements: {
      const Table t = elements_table(cfg);
      res.body = emit(t, cfg.format);
      res.summary.push_back("nonzero elements: " + std::to_string(t.rows.size()));
      break;
    }
    case Command::Response: {
      res.body = emit(response_table(cfg), cfg.format);
      break;
    }
    case Command::PhaseDiagram: {
      const PhaseDiagram pd = phase_diagram(cfg.medium, cfg.polarization, theta_grid(cfg), omega_grid(cfg));
      res.body = emit(phase_diagram_table(pd), cfg.format);
      std::ostringstream line;
      line << "polarization " << to_string(pd.polarization) << ": LH " << pd.count(Handedness::LH) << ", RH "
           << pd.count(Handedness::RH) << ", TR " << pd.count(Handedness::TR) << ", masked "
           << pd.count(Handedness::Masked);
      res.summary.push_back(line.str());
      for (const auto& w : pd.warnings) res.summary.push_back("warning: " + w);
      break;
    }
    case Command::Surface: {
      const double w = surface_omega(cfg);
      const ResponseTensors t = response_tensors(cfg.medium, w);
      const WaveVectorSurface s = wave_vector_surface(t, cfg.polarization, cfg.surface_samples);
      res.body = emit(surface_table(s), cfg.format);
      std::ostringstream line;
      line << "conic " << to_string(s.conic) << ", mixing angle " << format_double(s.mixing_angle * 180.0 / units::pi)
           << " deg, eta' " << format_double(t.eta.real()) << ", points " << s.points.size();
      res.summary.push_back(line.str());
      break;
    }
    case Command::Bandwidth: {
      res.body = emit(bandwidth_table(cfg), cfg.format);
      res.summary.push_back(
          "tau_c differs by the factor 2 between the two volume conventions; cylinder_4w matches 0.51 ns");
      break;
    }
    case Command::Validate: {
      ValidationReport rep = validation_report(cfg.medium.ring);
      const auto [lo, hi] = numeric_mu_zeros(cfg.medium);
      const double b = bandwidth(cfg.medium);
      if (b > 0.0) {
        const double rel = std::abs((hi - lo) - b) / b;
        rep.checks.push_back({"bandwidth_numeric_roots_rel", rel, 1e-6, rel < 1e-6, "mu1 zeros by bisection"});
      }
      if (cfg.format == OutputFormat::Json) {
        res.body = report_json(rep).dump(2) + "\n";
      } else {
        Table t;
        t.header = {"check", "value", "threshold", "pass", "note"};
        for (const Check& c : rep.checks) t.add({c.name, c.value, c.threshold, c.pass, c.note});
        res.body = to_csv(t);
      }
      std::size_t failed = 0;
      for (const Check& c : rep.checks) failed += c.pass ? 0 : 1;
      res.summary.push_back("validation: " + std::to_string(rep.checks.size() - failed) + "/" +
                            std::to_string(rep.checks.size()) + " checks passed");
      res.exit_code = rep.pass() ? 0 : 1;
      break;
    }
  }
  return res;
}

int run_command(Command cmd, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  CommandResult res;
  try {
    res = execute(cmd, cfg);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidParams& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const UnsupportedRegime& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  try {
    if (cfg.output) {
      write_atomic(*cfg.output, res.body);
    } else {
      out << res.body;
      out.flush();
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  for (const auto& line : res.summary) err << line << "\n";
  return res.exit_code;
}

}  // namespace mobius
