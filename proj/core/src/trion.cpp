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

#include "spinmod/trion.hpp"

#include <algorithm>
#include <cmath>

#include "spinmod/errors.hpp"
#include "spinmod/units.hpp"

namespace spinmod {

double TrionParams::max_rate() const {
    double m = std::max({gamma, omega_rabi, std::abs(delta), 2.0 * omega_b, 2.0 * std::abs(omega_h),
                         gamma_opt_deph});
    m = std::max(m, markovian_rate());
    m = std::max(m, overhauser_sigma());
    return m;
}

std::string TrionParams::validate() const {
    if (gamma < 0 || omega_rabi < 0 || gamma_opt_deph < 0 || markovian_rate() < 0 ||
        overhauser_sigma() < 0) {
        throw config_error("TrionParams: rates must be nonnegative");
    }
    if (gamma > 0 && omega_rabi > 0.3 * gamma) {
        return "drive exceeds weak-excitation bound (omega_rabi > 0.3 gamma)";
    }
    return {};
}

double larmor_splitting(double g, double b_field_tesla) {
    if (b_field_tesla < 0) {
        throw config_error("larmor_splitting: negative magnetic field");
    }
    // 2*omega_b = g * mu_B * B / hbar
    return units::rad_per_ns_from_ghz(g * units::mu_bohr_over_h_ghz_per_tesla * b_field_tesla);
}

CMatrix build_hamiltonian(const TrionParams &p) {
    using namespace basis;
    CMatrix h = CMatrix::Zero(dim, dim);
    h(trion_up, trion_up) = p.delta;
    h(trion_down, trion_down) = p.delta;
    h(up, down) = p.omega_b;
    h(down, up) = p.omega_b;
    h(trion_up, trion_down) = p.omega_h;
    h(trion_down, trion_up) = p.omega_h;
    const double half_rabi = 0.5 * p.omega_rabi;
    h(trion_up, up) = half_rabi;
    h(up, trion_up) = half_rabi;
    h(trion_down, down) = half_rabi;
    h(down, trion_down) = half_rabi;
    return h;
}

std::vector<CMatrix> build_collapse_ops(const TrionParams &p) {
    using namespace basis;
    std::vector<CMatrix> ops;
    if (p.gamma > 0) {
        CMatrix s_up = CMatrix::Zero(dim, dim);
        s_up(up, trion_up) = std::sqrt(p.gamma);
        ops.push_back(std::move(s_up));
        CMatrix s_down = CMatrix::Zero(dim, dim);
        s_down(down, trion_down) = std::sqrt(p.gamma);
        ops.push_back(std::move(s_down));
    }
    if (p.gamma_opt_deph > 0) {
        CMatrix p_trion = CMatrix::Zero(dim, dim);
        p_trion(trion_up, trion_up) = 1.0;
        p_trion(trion_down, trion_down) = 1.0;
        ops.push_back(std::sqrt(2.0 * p.gamma_opt_deph) * p_trion);
    }
    if (const double gs = p.markovian_rate(); gs > 0) {
        CMatrix sz = CMatrix::Zero(dim, dim);
        sz(up, up) = 1.0;
        sz(down, down) = -1.0;
        ops.push_back(std::sqrt(0.5 * gs) * sz);
    }
    return ops;
}

CMatrix v_port_field_op(const TrionParams &p) {
    using namespace basis;
    CMatrix e = CMatrix::Zero(dim, dim);
    const double amp = std::sqrt(0.5 * p.gamma);
    e(up, trion_up) = amp;
    e(down, trion_down) = -amp;
    return e;
}

CMatrix h_port_field_op(const TrionParams &p) {
    using namespace basis;
    CMatrix e = CMatrix::Zero(dim, dim);
    const double amp = std::sqrt(0.5 * p.gamma);
    e(up, trion_up) = amp;
    e(down, trion_down) = amp;
    return e;
}

TrionParams from_physical(const PhysicalInputs &in) {
    if (in.t1_ns <= 0) {
        throw config_error("from_physical: t1 must be positive");
    }
    if (in.b_field_tesla < 0 || in.p_over_psat < 0) {
        throw config_error("from_physical: b_field and p_over_psat must be nonnegative");
    }
    TrionParams p;
    p.gamma = 1.0 / in.t1_ns;
    p.omega_b = 0.5 * larmor_splitting(in.g_b, in.b_field_tesla);
    p.omega_h = 0.5 * larmor_splitting(in.g_h, in.b_field_tesla);
    p.omega_rabi = p.gamma * std::sqrt(0.5 * in.p_over_psat);
    return p;
}

TrionParams with_overhauser_shift(const TrionParams &p, double delta_w) {
    TrionParams out = p;
    out.omega_b = p.omega_b + 0.5 * delta_w;
    out.spin_dephasing = MarkovianSpinDephasing{0.0};
    return out;
}

Superoperator trion_liouvillian(const TrionParams &p) {
    return liouvillian(build_hamiltonian(p), build_collapse_ops(p));
}

} // namespace spinmod
