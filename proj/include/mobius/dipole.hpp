#pragma once

#include "mobius/model.hpp"

#include <Eigen/Core>

#include <array>
#include <string>

namespace mobius {

enum class DipoleKind { Electric, Magnetic };

/// <from| O |to> for O = d (C m) or m (A m^2), Cartesian components.
struct TransitionElement {
  EigenLabel from;
  EigenLabel to;
  DipoleKind kind = DipoleKind::Electric;
  Eigen::Vector3cd vector = Eigen::Vector3cd::Zero();
};

/// Subset of field polarizations {x, y, z}; empty means forbidden.
struct PolarizationSet {
  bool x = false;
  bool y = false;
  bool z = false;

  bool empty() const { return !(x || y || z); }
  PolarizationSet operator|(PolarizationSet o) const { return {x || o.x, y || o.y, z || o.z}; }
  friend bool operator==(const PolarizationSet&, const PolarizationSet&) = default;
};

inline constexpr PolarizationSet kXY{true, true, false};
inline constexpr PolarizationSet kXYZ{true, true, true};
inline constexpr PolarizationSet kZ{false, false, true};

std::string to_string(PolarizationSet s);

/// Components whose magnitude exceeds rel_tol * scale.
PolarizationSet nonzero_components(const Eigen::Vector3cd& v, double scale, double rel_tol = 1e-12);

/// Natural magnitudes used to judge "zero": e W for d, e xi R W / hbar for m.
double electric_scale(const RingParams& p);
double magnetic_scale(const RingParams& p);

/// Pseudo-spin block <k,s| O |k + dl*delta, s'> indexed [s][s'] by Band.
using PseudoSpinBlock = std::array<std::array<Eigen::Vector3cd, 2>, 2>;

/// Analytic electric block for dl in [-2, 2]; std::invalid_argument otherwise.
PseudoSpinBlock electric_block(const RingParams& p, double k, int dl);

/// Analytic magnetic block for dl in [-2, 2]; std::invalid_argument otherwise.
///
/// Normalized to the dense commutator m = -i e r x [H, r] / (2 hbar): the
/// brackets carry the prefactor e/hbar. The dl = +1 <Up|m|Down> block has
/// no z component.
PseudoSpinBlock magnetic_block(const RingParams& p, double k, int dl);

/// <from| d |to>. Blocks whose dl aliases modulo N (N <= 4) are summed.
TransitionElement electric_element(const RingParams& p, const EigenLabel& from, const EigenLabel& to);
/// <from| m |to>.
TransitionElement magnetic_element(const RingParams& p, const EigenLabel& from, const EigenLabel& to);

/// Electric dipole selection rules (symmetric in the two labels).
PolarizationSet electric_selection(const EigenLabel& from, const EigenLabel& to, int n);
/// Magnetic dipole selection rules; inter-band transitions only.
PolarizationSet magnetic_selection(const EigenLabel& from, const EigenLabel& to, int n);

}  // namespace mobius
