#pragma once

#include "mobius/dipole.hpp"
#include "mobius/model.hpp"

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <array>
#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace mobius {

/// Dense matrix over the atomic orbitals a_0..a_{N-1}, b_0..b_{N-1}.
struct DenseOperator {
  int dim = 0;
  Eigen::MatrixXcd entries;
};

/// Hueckel Hamiltonian in eV for any topology, including on-site +eps (ring A)
/// and -eps (ring B).
DenseOperator build_hamiltonian(const RingParams& p);

struct NumericEigensystem {
  Eigen::VectorXd values;     // eV, ascending
  Eigen::MatrixXcd vectors;   // columns
};

/// Jacobi diagonalization. Rejects non-Hermitian input.
NumericEigensystem numeric_eigensystem(const DenseOperator& op);

/// Shift by one site along the 2N-cycle a_0 -> ... -> a_{N-1} -> b_0 -> ... -> b_{N-1} -> a_0.
/// Commutes with the Mobius Hamiltonian.
Eigen::MatrixXcd twisted_translation(int n);

/// Mobius eigenvectors reordered to all_labels() order. Degenerate subspaces
/// are resolved by the twisted translation and each vector is phased so that
/// its a_0 amplitude is real and positive (the closed-form gauge).
NumericEigensystem labeled_mobius_eigensystem(const RingParams& p);

/// d = -e diag(r) per Cartesian component, C m.
std::array<Eigen::MatrixXcd, 3> electric_dipole_operators(const RingParams& p);

enum class MagneticDefinition { Commutator, BondCurrent };

/// Magnetic dipole operator components, A m^2. Commutator: -i e r x [H, r] / (2 hbar)
/// assembled from dense products. BondCurrent: sum over bonds of J_ij S_ij with
/// J_ij = i e beta_ij a_i^dag a_j / hbar + h.c., S_ij = R_i x R_j / 2, beta_ij = -H_ij.
std::array<Eigen::MatrixXcd, 3> magnetic_dipole_operators(const RingParams& p, MagneticDefinition def);

/// 2N x 2N table of 3-vectors; entry (i, j) = <state i| O |state j>.
struct ElementTable {
  DipoleKind kind = DipoleKind::Electric;
  int dim = 0;
  std::vector<Eigen::Vector3cd> entries;

  const Eigen::Vector3cd& at(int i, int j) const { return entries[static_cast<std::size_t>(i * dim + j)]; }
  Eigen::Vector3cd& at(int i, int j) { return entries[static_cast<std::size_t>(i * dim + j)]; }
};

/// Sandwich three operator components between the columns of `states`.
ElementTable sandwich(const std::array<Eigen::MatrixXcd, 3>& ops, const Eigen::MatrixXcd& states, DipoleKind kind);

/// Numeric tables in all_labels() order (Mobius) or ascending-energy order (other topologies).
ElementTable numeric_electric_elements(const RingParams& p);
ElementTable numeric_magnetic_elements(const RingParams& p, MagneticDefinition def = MagneticDefinition::Commutator);

/// Closed-form tables in all_labels() order.
ElementTable analytic_electric_table(const RingParams& p);
ElementTable analytic_magnetic_table(const RingParams& p);

/// Max |a - b| over all entries and components, divided by `scale`.
double max_table_deviation(const ElementTable& a, const ElementTable& b, double scale);

/// Dyad-level comparison: for every pair of degenerate level groups (G1, G2)
/// compares sum_{i in G1, j in G2} O_ij O_ij^dagger. Returns the max absolute
/// deviation divided by scale^2. Groups come from `energies` (eV, tolerance 1e-9 eV).
double dyad_deviation(const ElementTable& a, const ElementTable& b, const std::vector<double>& energies,
                      double scale);

/// Label energies in all_labels() order.
std::vector<double> label_energies(const RingParams& p);

struct CalibrationBlock {
  int dl = 0;  // (to.l - from.l) mod N
  Band from_band = Band::Down;
  Band to_band = Band::Down;
  std::complex<double> phase{1.0, 0.0};
  double residual = 0.0;  // relative to scale
};

struct Calibration {
  std::vector<CalibrationBlock> blocks;
  double max_residual = 0.0;
  bool ok = true;  // max_residual <= 1e-6
};

/// One unit-modulus phase per (dl, from band, to band) block, chosen by least
/// squares; residual is the max deviation after alignment.
Calibration calibrate_conventions(const ElementTable& analytic, const ElementTable& numeric, int n, double scale);

struct PerfectRingReport {
  double commutator_norm = 0.0;   // max |[m_z, H]_ij|, relative to max|m_z| max|H|
  double max_mxy = 0.0;           // max |m_x|, |m_y| entries, relative to e xi R^2 / hbar
  double max_offdiag_m = 0.0;     // between distinct levels, relative to e xi R^2 / hbar
  double max_offdiag_d = 0.0;     // between distinct levels, relative to e R
};

/// Single-ring (untwisted) magnetic decoupling checks. Requires SingleRing.
PerfectRingReport perfect_ring_regression(const RingParams& p);

struct TransitionGroup {
  double energy = 0.0;           // excitation energy above the ground level, eV
  std::vector<int> states;       // state indices
  double electric = 0.0;         // sqrt(sum |d|^2) / (e W)
  double magnetic = 0.0;         // sqrt(sum |m|^2) / (e xi R W / hbar)
  bool both = false;
};

struct SharedTransitionReport {
  Topology topology = Topology::Mobius;
  std::vector<TransitionGroup> groups;
  int both_count = 0;
};

/// Groups transitions out of the ground level by frequency (1e-9 eV) and
/// flags those carrying both electric and magnetic strength above `tol`.
SharedTransitionReport shared_transitions(const RingParams& p, double tol = 1e-9);

/// shared_transitions() restricted to the untwisted double ring.
SharedTransitionReport annulene_cross_check(const RingParams& p, double tol = 1e-9);

struct Check {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::string note;
};

struct ValidationReport {
  std::vector<Check> checks;
  std::map<std::string, double> quantities;
  std::vector<std::string> notes;
  bool pass() const;
};

/// Runs the oracle suite (spectra, dipole tables, calibration, perfect ring,
/// annulene, volume conventions) for the given molecule.
ValidationReport validation_report(const RingParams& p);

}  // namespace mobius
