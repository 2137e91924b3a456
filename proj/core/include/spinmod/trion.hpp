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

#ifndef SPINMOD_TRION_HPP
#define SPINMOD_TRION_HPP

#include <string>
#include <variant>
#include <vector>

#include "spinmod/qsys.hpp"

namespace spinmod {

// Four-level negatively-charged-exciton system in the drive rotating frame.
//
// Basis order (fixed; all outputs use it):
//   0: |up>     electron spin up (ground)
//   1: |down>   electron spin down (ground)
//   2: |Tup>    trion with sigma+ selection rule, couples to |up>
//   3: |Tdown>  trion with sigma- selection rule, couples to |down>
namespace basis {
inline constexpr int up = 0;
inline constexpr int down = 1;
inline constexpr int trion_up = 2;
inline constexpr int trion_down = 3;
inline constexpr int dim = 4;
} // namespace basis

// Markovian spin dephasing: collapse operator sqrt(rate/2) * sigma_z on the
// ground doublet. The z-basis ground coherence decays at `rate`; the visible
// Larmor-oscillation envelope decays at rate/2.
struct MarkovianSpinDephasing {
    double rate = 0.0; // rad/ns
};

// Quasistatic Overhauser dephasing: the precession frequency 2*omega_b is
// shifted by a frozen Gaussian offset of standard deviation sigma (rad/ns),
// averaged classically (module ensemble). Gives a Gaussian oscillation
// envelope exp(-(sigma*tau)^2/2), 1/e time sqrt(2)/sigma.
struct QuasistaticSpinDephasing {
    double sigma = 0.0; // rad/ns, std dev of the 2*omega_b shift
};

using SpinDephasing = std::variant<MarkovianSpinDephasing, QuasistaticSpinDephasing>;

struct TrionParams {
    double gamma = 0.0;          // total trion spontaneous emission rate, 1/T1, rad/ns
    double omega_b = 0.0;        // electron ground Zeeman half-splitting; precession at 2*omega_b
    double omega_h = 0.0;        // in-plane hole half-splitting of the trion doublet
    double delta = 0.0;          // QD-laser detuning, rad/ns
    double omega_rabi = 0.0;     // H-polarized drive Rabi frequency, rad/ns
    double gamma_opt_deph = 0.0; // optical pure dephasing, rad/ns
    SpinDephasing spin_dephasing = MarkovianSpinDephasing{};

    bool is_quasistatic() const {
        return std::holds_alternative<QuasistaticSpinDephasing>(spin_dephasing);
    }
    double markovian_rate() const {
        const auto *m = std::get_if<MarkovianSpinDephasing>(&spin_dephasing);
        return m ? m->rate : 0.0;
    }
    double overhauser_sigma() const {
        const auto *q = std::get_if<QuasistaticSpinDephasing>(&spin_dephasing);
        return q ? q->sigma : 0.0;
    }

    // Largest rate/frequency scale, used for integrator and trajectory step bounds.
    double max_rate() const;

    // Throws config errors for negative rates. Returns a warning string for
    // drives beyond the weak-excitation bound (omega_rabi > 0.3 gamma), empty
    // otherwise.
    std::string validate() const;
};

struct PhysicalInputs {
    double t1_ns = 0.0;       // trion lifetime
    double b_field_tesla = 0.0;
    double g_b = 0.0;         // in-plane electron g-factor
    double g_h = 0.0;         // in-plane hole g-factor
    double p_over_psat = 0.0; // drive power ratio
};

// Full precession angular frequency 2*omega_b = g * mu_B * B / hbar, rad/ns.
double larmor_splitting(double g, double b_field_tesla);

// H = delta*(P_Tup + P_Tdown) + omega_b*(|up><down| + h.c.)
//   + omega_h*(|Tup><Tdown| + h.c.)
//   + (omega_rabi/2)*(|Tup><up| + |Tdown><down| + h.c.)
CMatrix build_hamiltonian(const TrionParams &p);

// {sqrt(gamma)|up><Tup|, sqrt(gamma)|down><Tdown|,
//  sqrt(2*gamma_opt)*(P_Tup+P_Tdown), sqrt(gamma_s/2)*(P_up - P_down)};
// zero-rate operators are omitted. Quasistatic dephasing contributes no
// collapse operator (it is a classical ensemble, module ensemble).
std::vector<CMatrix> build_collapse_ops(const TrionParams &p);

// Cross-polarized detection operator E_V = sqrt(gamma/2)(|up><Tup| - |down><Tdown|).
CMatrix v_port_field_op(const TrionParams &p);
// Co-polarized counterpart E_H = sqrt(gamma/2)(|up><Tup| + |down><Tdown|).
CMatrix h_port_field_op(const TrionParams &p);

// Unit conversion from laboratory parameters. Saturation convention
// Omega_sat = gamma/sqrt(2) (two-level excited population 1/4 at P = P_sat),
// so omega_rabi = gamma * sqrt(p_over_psat / 2).
TrionParams from_physical(const PhysicalInputs &in);

// Returns a copy of p with the Overhauser shift applied: omega_b -> omega_b + delta_w/2
// where delta_w shifts the precession frequency 2*omega_b.
TrionParams with_overhauser_shift(const TrionParams &p, double delta_w);

Superoperator trion_liouvillian(const TrionParams &p);

} // namespace spinmod

#endif
