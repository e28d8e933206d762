#pragma once

#include <Eigen/Core>

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mobius {

enum class Topology { Mobius, DoubleRingPeriodic, SingleRing };
enum class VolumeConvention { AppendixD, Cylinder4W };
enum class Band { Down, Up };
enum class Ring { A, B };

std::string to_string(Topology t);
std::string to_string(VolumeConvention v);
std::string to_string(Band b);

/// Thrown when a parameter set violates the model's invariants.
class InvalidParams : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when the requested quantity is not defined in the given regime
/// (e.g. the ground state for V <= 0, or a pole hit exactly with zero linewidth).
class UnsupportedRegime : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Physical constants of one molecule. Energies in eV, lengths in metres.
struct RingParams {
  int n_per_ring = 12;
  double v_inter = 3.6;
  double xi_intra = 3.6;
  double eps_onsite = 0.0;
  double half_width = 0.077e-9;
  std::optional<double> radius_override;  // default N W / pi
  double decay_rate = 2.5e8;              // gamma, 1/s
  Topology topology = Topology::Mobius;
  VolumeConvention volume_convention = VolumeConvention::Cylinder4W;

  double delta() const;
  double radius() const;
};

/// Throws InvalidParams unless N >= 3, W > 0, R > 0, gamma >= 0 and all
/// energies are finite. A nonzero on-site energy is only accepted when
/// `allow_onsite` is set (the dense oracle Hamiltonian supports it; the
/// closed-form spectrum does not).
void validate(const RingParams& p, bool allow_onsite = false);

/// Default parameters of the reference molecule (N = 12, V = xi = 3.6 eV,
/// W = 0.077 nm, gamma^-1 = 4 ns).
RingParams default_params();

struct EigenLabel {
  int l = 0;
  Band band = Band::Down;

  friend bool operator==(const EigenLabel&, const EigenLabel&) = default;
};

EigenLabel normalized(EigenLabel label, int n);
std::string to_string(const EigenLabel& label);

/// All 2N labels, Down band first, l ascending within a band.
std::vector<EigenLabel> all_labels(int n);
/// Position of a label in all_labels().
int label_index(const EigenLabel& label, int n);

struct EigenState {
  EigenLabel label;
  double energy = 0.0;  // eV
  Eigen::VectorXcd amplitudes;
};

struct SitePosition {
  int j = 0;
  Ring ring = Ring::A;
  Eigen::Vector3d position;
};

/// Index of orbital (j, ring) in the atomic-orbital basis a_0..a_{N-1}, b_0..b_{N-1}.
inline int site_index(int j, Ring ring, int n) { return ring == Ring::A ? j : n + j; }

/// Closed-form band energy (eV). Mobius topology only.
double band_energy(const RingParams& p, const EigenLabel& label);

/// Closed-form eigenstate over the 2N atomic orbitals.
EigenState eigenstate(const RingParams& p, const EigenLabel& label);
std::vector<EigenState> all_eigenstates(const RingParams& p);

inline constexpr EigenLabel ground_label{0, Band::Down};

/// |0, Down>, uniform amplitudes 1/sqrt(2N). Requires V > 0 and xi > 0.
EigenState ground_state(const RingParams& p);

/// (E_label - E_ground) / hbar in rad/s. Throws for the ground label itself.
double transition_frequency(const RingParams& p, const EigenLabel& label);

/// hbar * Delta_{0,Up} in eV: 2V + 2 xi (1 - cos(delta/2)).
double lowest_interband_gap(const RingParams& p);

/// Nuclear positions. Mobius uses the twisted-ribbon geometry; the periodic
/// double ring is the untwisted ribbon (ring A at +W, ring B at -W); the
/// single ring has N planar sites of radius R.
std::vector<SitePosition> site_positions(const RingParams& p);

/// Number of atomic orbitals for the topology (2N, or N for a single ring).
int basis_dimension(const RingParams& p);

}  // namespace mobius
