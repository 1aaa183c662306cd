#pragma once

// Unit conversions. Everything internal is in Hartree atomic units; eV and
// milliangstrom appear only at input/output boundaries.

namespace polsim {

inline constexpr double hartree_ev = 27.211386;   // 1 a.u. energy in eV
inline constexpr double bohr_angstrom = 0.529177; // 1 a.u. length in Angstrom
inline constexpr double bohr_milliang = 529.177;  // 1 a.u. length in mA
inline constexpr double c_light_au = 137.036;     // speed of light, a.u.

inline constexpr double ev_to_au(double e_ev) { return e_ev / hartree_ev; }
inline constexpr double au_to_ev(double e_au) { return e_au * hartree_ev; }
inline constexpr double au_to_milliang(double r) { return r * bohr_milliang; }

} // namespace polsim
