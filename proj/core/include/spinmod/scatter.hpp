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

#ifndef SPINMOD_SCATTER_HPP
#define SPINMOD_SCATTER_HPP

#include <array>
#include <complex>
#include <vector>

namespace spinmod {

// Closed-form weak-excitation scattering off the QD-cavity system.

struct CavityParams {
    double kappa = 0.0;      // total cavity decay, rad/ns
    double kappa_ext = 0.0;  // top-mirror external coupling, rad/ns
    double g_coupling = 0.0; // QD-cavity coupling, rad/ns
    double gamma_x = 0.0;    // transition total linewidth, rad/ns
    double delta_c = 0.0;    // cavity-laser detuning, rad/ns

    void validate() const;
};

struct ScatterCoefficients {
    std::complex<double> r_c; // empty-cavity reflection
    double r_d = 0.0;         // magnitude of QD-coupled reflection
    double phi_d = 0.0;       // QD-induced relative phase, radians

    std::complex<double> r_d_complex() const { return r_d * std::exp(std::complex<double>(0.0, phi_d)); }
};

struct SpinState {
    std::complex<double> a; // amplitude of |up>
    std::complex<double> b; // amplitude of |down>

    static SpinState up() { return {1.0, 0.0}; }
    static SpinState down() { return {0.0, 1.0}; }
    void validate() const; // |a|^2 + |b|^2 = 1 within 1e-12
};

struct CrossOutput {
    std::complex<double> amp_up;   // amplitude on |up>|V>
    std::complex<double> amp_down; // amplitude on |down>|V>
    double norm = 0.0;             // V-port emission probability
};

// Single-sided cavity input-output reflection:
//   r_c             = 1 - 2 kappa_ext / (kappa + 2i delta_c)
//   r_d e^{i phi_d} = 1 - 2 kappa_ext / (kappa + 2i delta_c + 4 g^2/(gamma_x + 2i delta))
// phi_d is reported relative to the empty-cavity phase: arg(r_d_cplx) - arg(r_c).
ScatterCoefficients reflection_coefficients(const CavityParams &c, double delta);

// V-port output amplitude for an H input on spin state (a, b):
//   t = (r_c - r_d e^{i phi_d}) / 2, amp_up = t a, amp_down = -t b, norm = |t|^2.
// Here r_d e^{i phi_d} is taken relative to r_c's phase, i.e. in the frame
// where the empty-cavity reflection is real positive.
CrossOutput cross_amplitude(const SpinState &s, const ScatterCoefficients &sc);

// Stokes vector (S1, S2, S3) of the total reflected field for H input, for a
// spin prepared in |up> or |down>, one point per detuning in the sweep.
enum class BasisSpin { up, down };
std::vector<std::array<double, 3>> poincare_trajectory(const CavityParams &c,
                                                       const std::vector<double> &delta_sweep,
                                                       BasisSpin spin);

// beta = F_p / (F_p + 1), Purcell factor F_p = 4 g^2 / (kappa gamma_x).
double beta_factor(const CavityParams &c);

} // namespace spinmod

#endif
