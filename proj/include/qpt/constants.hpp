// constants.hpp — Physical constants and the unit conventions used throughout.
//
// Working units: energy in µeV, voltage in µV, current in nA, resistance in
// kΩ, frequency in GHz (grids) or MHz (rates), time in µs. With e = 1 a
// voltage in µV equals an energy in µeV, and µV/kΩ = nA, so all junction
// formulas stay O(1)-O(1000).

#pragma once

#include <numbers>

namespace qpt::constants {

inline constexpr double pi = std::numbers::pi;

// CODATA exact values
inline constexpr double e_charge = 1.602176634e-19;   // C
inline constexpr double h_planck = 6.62607015e-34;    // J s

// quantum of resistance h/e^2 in kΩ
inline constexpr double r_k_kohm = h_planck / (e_charge * e_charge) * 1e-3;

// photon energy per unit frequency: h × 1 GHz in µeV
inline constexpr double uev_per_ghz = h_planck / e_charge * 1e9 * 1e6;

// 1 nA / e expressed as a plain rate in µs^-1
inline constexpr double rate_per_na = 1e-9 / e_charge * 1e-6;

// 1 nA / e expressed as an ordinary frequency in MHz (rate / 2π)
inline constexpr double mhz_per_na = rate_per_na / (2.0 * pi);

// ordinary frequency in MHz → angular rate in rad/µs (and 1/µs for decay rates)
inline constexpr double two_pi_mhz = 2.0 * pi;

}  // namespace qpt::constants
