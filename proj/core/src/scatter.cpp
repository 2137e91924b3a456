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

#include "spinmod/scatter.hpp"

#include <cmath>

#include "spinmod/errors.hpp"
#include "spinmod/units.hpp"

namespace spinmod {

namespace {

// wrap into (-pi, pi], with -pi mapped to +pi
double wrap_phase(double phi) {
    phi = std::remainder(phi, units::two_pi);
    if (phi <= -units::pi + 1e-15) {
        phi = units::pi;
    }
    return phi;
}

std::complex<double> coupled_reflection(const CavityParams &c, double delta) {
    const std::complex<double> i2(0.0, 2.0);
    const std::complex<double> atom = 4.0 * c.g_coupling * c.g_coupling / (c.gamma_x + i2 * delta);
    return 1.0 - 2.0 * c.kappa_ext / (c.kappa + i2 * c.delta_c + atom);
}

std::complex<double> empty_reflection(const CavityParams &c) {
    const std::complex<double> i2(0.0, 2.0);
    return 1.0 - 2.0 * c.kappa_ext / (c.kappa + i2 * c.delta_c);
}

} // namespace

void CavityParams::validate() const {
    if (kappa < 0 || kappa_ext < 0 || g_coupling < 0 || gamma_x < 0) {
        throw config_error("CavityParams: rates must be nonnegative");
    }
    if (kappa_ext > kappa) {
        throw config_error("CavityParams: kappa_ext must not exceed kappa");
    }
}

void SpinState::validate() const {
    const double n = std::norm(a) + std::norm(b);
    if (std::abs(n - 1.0) > 1e-12) {
        throw config_error("SpinState: not normalized");
    }
}

ScatterCoefficients reflection_coefficients(const CavityParams &c, double delta) {
    c.validate();
    if (c.kappa == 0 && c.delta_c == 0 && c.g_coupling == 0 && c.gamma_x == 0 && delta == 0) {
        throw numeric_error("reflection_coefficients: all rates and detunings are zero");
    }
    if (c.gamma_x == 0 && delta == 0 && c.g_coupling > 0) {
        throw numeric_error("reflection_coefficients: atomic denominator vanishes");
    }
    ScatterCoefficients sc;
    sc.r_c = empty_reflection(c);
    const std::complex<double> rd = coupled_reflection(c, delta);
    sc.r_d = std::abs(rd);
    // phase relative to the empty cavity; the global (empty-cavity) phase is
    // unobservable in the cross-polarized port
    sc.phi_d = wrap_phase(std::arg(rd) - std::arg(sc.r_c));
    return sc;
}

CrossOutput cross_amplitude(const SpinState &s, const ScatterCoefficients &sc) {
    s.validate();
    // evaluated in the frame where the empty-cavity reflection is real positive
    const std::complex<double> t = 0.5 * (std::abs(sc.r_c) - sc.r_d_complex());
    CrossOutput out;
    out.amp_up = t * s.a;
    out.amp_down = -t * s.b;
    out.norm = std::norm(t) * (std::norm(s.a) + std::norm(s.b));
    return out;
}

std::vector<std::array<double, 3>> poincare_trajectory(const CavityParams &c,
                                                       const std::vector<double> &delta_sweep,
                                                       BasisSpin spin) {
    c.validate();
    std::vector<std::array<double, 3>> out;
    out.reserve(delta_sweep.size());
    const std::complex<double> rc = empty_reflection(c);
    for (double delta : delta_sweep) {
        const std::complex<double> rd = coupled_reflection(c, delta);
        // H input splits evenly into sigma+/sigma-; the spin selects which
        // circular component sees the QD-coupled cavity
        const std::complex<double> e_plus = (spin == BasisSpin::up ? rd : rc);
        const std::complex<double> e_minus = (spin == BasisSpin::up ? rc : rd);
        const std::complex<double> e_h = 0.5 * (e_plus + e_minus);
        const std::complex<double> e_v = 0.5 * (e_plus - e_minus);
        const double s0 = std::norm(e_h) + std::norm(e_v);
        if (s0 < 1e-30) {
            out.push_back({0.0, 0.0, 0.0});
            continue;
        }
        const std::complex<double> cross = std::conj(e_h) * e_v;
        out.push_back({(std::norm(e_h) - std::norm(e_v)) / s0, 2.0 * cross.real() / s0,
                       2.0 * cross.imag() / s0});
    }
    return out;
}

double beta_factor(const CavityParams &c) {
    c.validate();
    if (c.g_coupling == 0) {
        return 0.0;
    }
    const double denom = c.kappa * c.gamma_x;
    if (denom == 0) {
        throw numeric_error("beta_factor: kappa * gamma_x is zero with g > 0");
    }
    const double purcell = 4.0 * c.g_coupling * c.g_coupling / denom;
    return purcell / (purcell + 1.0);
}

} // namespace spinmod
