#pragma once

// CODATA 2018 constants (SI). The public API takes energies in eV and lengths
// in metres; everything below the API boundary works in SI.
namespace mobius::units {

inline constexpr double pi = 3.14159265358979323846;

inline constexpr double elementary_charge = 1.602176634e-19;  // C
inline constexpr double hbar = 1.054571817e-34;               // J s
inline constexpr double speed_of_light = 299792458.0;         // m/s
inline constexpr double mu0 = 1.25663706212e-6;               // N/A^2
inline constexpr double eps0 = 1.0 / (mu0 * speed_of_light * speed_of_light);

inline constexpr double ev_to_joule(double ev) { return ev * elementary_charge; }
inline constexpr double joule_to_ev(double j) { return j / elementary_charge; }

/// Angular frequency (rad/s) of an energy quantum given in eV.
inline constexpr double ev_to_rad_per_s(double ev) { return ev * elementary_charge / hbar; }
inline constexpr double rad_per_s_to_ev(double w) { return w * hbar / elementary_charge; }

inline constexpr double nm = 1e-9;
inline constexpr double ns = 1e-9;

}  // namespace mobius::units
