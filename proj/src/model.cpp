#include "mobius/model.hpp"

#include "mobius/units.hpp"

#include <cmath>

namespace mobius {

namespace {

using units::pi;

void require_mobius(const RingParams& p, const char* what) {
  if (p.topology != Topology::Mobius) {
    throw InvalidParams(std::string(what) +
                        ": closed forms exist only for the Mobius topology; use the dense oracle for " +
                        to_string(p.topology));
  }
}

}  // namespace

std::string to_string(Topology t) {
  switch (t) {
    case Topology::Mobius: return "mobius";
    case Topology::DoubleRingPeriodic: return "double_ring_periodic";
    case Topology::SingleRing: return "single_ring";
  }
  return "?";
}

std::string to_string(VolumeConvention v) {
  return v == VolumeConvention::AppendixD ? "appendix_d" : "cylinder_4w";
}

std::string to_string(Band b) { return b == Band::Up ? "up" : "down"; }

std::string to_string(const EigenLabel& label) {
  return "(" + std::to_string(label.l) + "," + to_string(label.band) + ")";
}

double RingParams::delta() const { return 2.0 * pi / n_per_ring; }

double RingParams::radius() const {
  return radius_override ? *radius_override : n_per_ring * half_width / pi;
}

void validate(const RingParams& p, bool allow_onsite) {
  if (p.n_per_ring < 3) throw InvalidParams("n_per_ring must be >= 3");
  if (!(p.half_width > 0.0) || !std::isfinite(p.half_width)) {
    throw InvalidParams("half_width must be > 0");
  }
  if (!(p.radius() > 0.0) || !std::isfinite(p.radius())) throw InvalidParams("radius must be > 0");
  if (!(p.decay_rate >= 0.0) || !std::isfinite(p.decay_rate)) {
    throw InvalidParams("decay_rate must be >= 0");
  }
  if (!std::isfinite(p.v_inter) || !std::isfinite(p.xi_intra) || !std::isfinite(p.eps_onsite)) {
    throw InvalidParams("energies must be finite");
  }
  if (!allow_onsite && p.eps_onsite != 0.0) {
    throw InvalidParams("eps_onsite must be 0 outside the dense oracle");
  }
}

RingParams default_params() { return RingParams{}; }

EigenLabel normalized(EigenLabel label, int n) {
  label.l = ((label.l % n) + n) % n;
  return label;
}

std::vector<EigenLabel> all_labels(int n) {
  std::vector<EigenLabel> out;
  out.reserve(2 * n);
  for (Band b : {Band::Down, Band::Up}) {
    for (int l = 0; l < n; ++l) out.push_back({l, b});
  }
  return out;
}

int label_index(const EigenLabel& label, int n) {
  const EigenLabel norm = normalized(label, n);
  return (norm.band == Band::Down ? 0 : n) + norm.l;
}

int basis_dimension(const RingParams& p) {
  return p.topology == Topology::SingleRing ? p.n_per_ring : 2 * p.n_per_ring;
}

double band_energy(const RingParams& p, const EigenLabel& label) {
  validate(p);
  require_mobius(p, "band_energy");
  const double d = p.delta();
  const double k = normalized(label, p.n_per_ring).l * d;
  if (label.band == Band::Up) return p.v_inter - 2.0 * p.xi_intra * std::cos(k - d / 2.0);
  return -p.v_inter - 2.0 * p.xi_intra * std::cos(k);
}

EigenState eigenstate(const RingParams& p, const EigenLabel& label) {
  validate(p);
  require_mobius(p, "eigenstate");
  const int n = p.n_per_ring;
  const double d = p.delta();
  const EigenLabel norm = normalized(label, n);
  const double k = norm.l * d;
  const double norm_factor = 1.0 / std::sqrt(2.0 * n);

  EigenState s;
  s.label = norm;
  s.energy = band_energy(p, norm);
  s.amplitudes = Eigen::VectorXcd::Zero(2 * n);
  // |k,Up> carries the half-flux phase and opposite signs on the two rings.
  const double q = norm.band == Band::Up ? k - d / 2.0 : k;
  const double ring_b_sign = norm.band == Band::Up ? -1.0 : 1.0;
  for (int j = 0; j < n; ++j) {
    const std::complex<double> phase = std::polar(norm_factor, -q * j);
    s.amplitudes[site_index(j, Ring::A, n)] = phase;
    s.amplitudes[site_index(j, Ring::B, n)] = ring_b_sign * phase;
  }
  return s;
}

std::vector<EigenState> all_eigenstates(const RingParams& p) {
  std::vector<EigenState> out;
  for (const auto& label : all_labels(p.n_per_ring)) out.push_back(eigenstate(p, label));
  return out;
}

EigenState ground_state(const RingParams& p) {
  validate(p);
  if (!(p.v_inter > 0.0) || !(p.xi_intra > 0.0)) {
    throw UnsupportedRegime("ground state |0,down> requires V > 0 and xi > 0");
  }
  return eigenstate(p, ground_label);
}

double transition_frequency(const RingParams& p, const EigenLabel& label) {
  const EigenLabel norm = normalized(label, p.n_per_ring);
  if (norm == ground_label) {
    throw std::invalid_argument("transition_frequency: ground label has no transition");
  }
  const double e_g = ground_state(p).energy;
  return units::ev_to_rad_per_s(band_energy(p, norm) - e_g);
}

double lowest_interband_gap(const RingParams& p) {
  validate(p);
  require_mobius(p, "lowest_interband_gap");
  return 2.0 * p.v_inter + 2.0 * p.xi_intra * (1.0 - std::cos(p.delta() / 2.0));
}

std::vector<SitePosition> site_positions(const RingParams& p) {
  validate(p, true);
  const int n = p.n_per_ring;
  const double d = p.delta();
  const double r = p.radius();
  const double w = p.half_width;
  std::vector<SitePosition> out;

  if (p.topology == Topology::SingleRing) {
    for (int j = 0; j < n; ++j) {
      const double phi = j * d;
      out.push_back({j, Ring::A, Eigen::Vector3d(r * std::cos(phi), r * std::sin(phi), 0.0)});
    }
    return out;
  }

  for (Ring ring : {Ring::A, Ring::B}) {
    const double s = ring == Ring::A ? 1.0 : -1.0;
    for (int j = 0; j < n; ++j) {
      const double phi = j * d;
      Eigen::Vector3d pos;
      if (p.topology == Topology::Mobius) {
        const double rho = r + s * w * std::sin(phi / 2.0);
        pos = {rho * std::cos(phi), rho * std::sin(phi), s * w * std::cos(phi / 2.0)};
      } else {
        pos = {r * std::cos(phi), r * std::sin(phi), s * w};
      }
      out.push_back({j, ring, pos});
    }
  }
  return out;
}

}  // namespace mobius
