// Copyright 2026 The spinmod Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SPINMOD_UNITS_HPP
#define SPINMOD_UNITS_HPP

#include <numbers>

// Internal units are ns for time and rad/ns for angular rates/frequencies.
// CLI and config inputs use ordinary frequencies (MHz/GHz) and ps/ns times;
// conversions happen only at those boundaries.

namespace spinmod::units {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * pi;

// ordinary frequency <-> angular rate
inline constexpr double rad_per_ns_from_ghz(double f_ghz) { return two_pi * f_ghz; }
inline constexpr double rad_per_ns_from_mhz(double f_mhz) { return two_pi * f_mhz * 1e-3; }
inline constexpr double ghz_from_rad_per_ns(double w) { return w / two_pi; }
inline constexpr double mhz_from_rad_per_ns(double w) { return 1e3 * w / two_pi; }

// 1 ueV of energy as an angular rate (E/hbar), rad/ns
inline constexpr double rad_per_ns_per_uev = 1.519;

// Bohr magneton over Planck constant, GHz per tesla
inline constexpr double mu_bohr_over_h_ghz_per_tesla = 13.996;

inline constexpr double ns_from_ps(double t_ps) { return t_ps * 1e-3; }
inline constexpr double ps_from_ns(double t_ns) { return t_ns * 1e3; }

} // namespace spinmod::units

#endif
