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

#include "spinmod/correlations.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

#include "spinmod/errors.hpp"
#include "spinmod/quadrature.hpp"
#include "spinmod/units.hpp"

namespace spinmod {

std::vector<double> TauGrid::values() const {
    std::vector<double> out(n_points);
    for (int k = 0; k < n_points; ++k) {
        out[k] = tau(k);
    }
    return out;
}

void HomodyneConfig::validate() const {
    if (alpha < 0 || phase_noise_sigma < 0) {
        throw config_error("HomodyneConfig: alpha and phase_noise_sigma must be nonnegative");
    }
}

std::vector<complex> two_time_series(const Superoperator &liouv, const CMatrix &start,
                                     const CMatrix &readout, const TauGrid &grid,
                                     double step_override) {
    if (grid.n_points < 2 || grid.tau_max <= 0) {
        throw config_error("two_time_series: grid needs tau_max > 0 and at least two points");
    }
    const double dtau = grid.step();
    const double h_max = step_override > 0.0 ? step_override : liouv.default_step();
    const int substeps = std::max(1, static_cast<int>(std::ceil(dtau / h_max)));
    const CMatrix one_step = rk4_step_matrix(liouv, dtau / substeps);
    CMatrix interval = one_step;
    for (int s = 1; s < substeps; ++s) {
        interval = one_step * interval;
    }

    // Tr[R X] = vec(R^T) . vec(X), a plain bilinear sum; Eigen's dot
    // conjugates its left argument, hence the pre-conjugated readout vector.
    const CVector r = vectorize(readout.transpose()).conjugate();
    CVector x = vectorize(start);
    std::vector<complex> out(grid.n_points);
    for (int k = 0; k < grid.n_points; ++k) {
        out[k] = r.dot(x);
        if (k + 1 < grid.n_points) {
            x = interval * x;
        }
    }
    return out;
}

namespace {

struct SteadyContext {
    Superoperator liouv;
    DensityMatrix rho_ss;
    CMatrix e_v;
    double intensity;
};

SteadyContext make_context(const TrionParams &p) {
    p.validate();
    Superoperator liouv = trion_liouvillian(p);
    DensityMatrix rho = steady_state(liouv);
    CMatrix e_v = v_port_field_op(p);
    const double intensity = (e_v.adjoint() * e_v * rho.matrix()).trace().real();
    if (intensity <= 1e-14 * std::max(p.gamma, 1.0)) {
        throw numeric_error("no scattered field: steady-state V intensity is zero");
    }
    return {std::move(liouv), std::move(rho), std::move(e_v), intensity};
}

void check_grid(const TrionParams &p, const TauGrid &grid) {
    double bound = 0.05 / std::max(p.gamma, 1e-30);
    if (p.omega_b > 0) {
        bound = std::min(bound, 0.05 * units::pi / (2.0 * p.omega_b));
    }
    if (grid.step() > bound) {
        throw config_error("tau grid step " + std::to_string(grid.step()) +
                           " ns too coarse; need <= " + std::to_string(bound) + " ns");
    }
}

// Phase reference for the local oscillator: unit phasor of <E_H>_ss, the mean
// scattered-dipole quadrature. At delta = 0 with a real drive this is +i.
complex dipole_phasor(const SteadyContext &ctx, const TrionParams &p) {
    const complex mean_h = (h_port_field_op(p) * ctx.rho_ss.matrix()).trace();
    const double mag = std::abs(mean_h);
    if (mag < 1e-14) {
        return complex(0.0, 1.0);
    }
    return mean_h / mag;
}

CorrelationSeries raw_g2_with_op(const SteadyContext &ctx, const CMatrix &field,
                                 const TauGrid &grid) {
    const CMatrix start = field * ctx.rho_ss.matrix() * field.adjoint();
    const CMatrix readout = field.adjoint() * field;
    CorrelationSeries out;
    out.grid = grid;
    out.values = two_time_series(ctx.liouv, start, readout, grid);
    out.kind = CorrelationKind::raw_g2;
    out.normalization = (readout * ctx.rho_ss.matrix()).trace().real();
    return out;
}

CorrelationSeries normalize_g2(CorrelationSeries raw) {
    const double denom = raw.normalization * raw.normalization;
    for (auto &v : raw.values) {
        v /= denom;
    }
    raw.kind = CorrelationKind::g2;
    raw.normalization = denom;
    return raw;
}

} // namespace

double steady_v_intensity(const TrionParams &p) { return make_context(p).intensity; }

CorrelationSeries raw_g1(const TrionParams &p, const TauGrid &grid) {
    check_grid(p, grid);
    const SteadyContext ctx = make_context(p);
    CorrelationSeries out;
    out.grid = grid;
    out.values = two_time_series(ctx.liouv, ctx.e_v * ctx.rho_ss.matrix(), ctx.e_v.adjoint(), grid);
    out.kind = CorrelationKind::raw_g1;
    out.normalization = ctx.intensity;
    return out;
}

CorrelationSeries g1(const TrionParams &p, const TauGrid &grid) {
    CorrelationSeries out = raw_g1(p, grid);
    for (auto &v : out.values) {
        v /= out.normalization;
    }
    out.kind = CorrelationKind::g1;
    return out;
}

CorrelationSeries raw_g2(const TrionParams &p, const TauGrid &grid) {
    check_grid(p, grid);
    const SteadyContext ctx = make_context(p);
    return raw_g2_with_op(ctx, ctx.e_v, grid);
}

CorrelationSeries g2(const TrionParams &p, const TauGrid &grid) {
    return normalize_g2(raw_g2(p, grid));
}

namespace {

CorrelationSeries raw_g2_hom_impl(const SteadyContext &ctx, const TrionParams &p,
                                  const HomodyneConfig &h, const TauGrid &grid) {
    const complex u = dipole_phasor(ctx, p);
    const CMatrix id = CMatrix::Identity(basis::dim, basis::dim);

    auto total_field = [&](double phi) {
        return CMatrix(h.alpha * u * std::exp(complex(0.0, phi)) * id + ctx.e_v);
    };

    if (h.phase_noise_sigma <= 0) {
        return raw_g2_with_op(ctx, total_field(h.phi_lo), grid);
    }

    // Gauss-Hermite average over the Gaussian-distributed lock point.
    constexpr int kPhaseNodes = 21;
    std::vector<double> nodes, weights;
    gauss_hermite_nodes(kPhaseNodes, nodes, weights);
    CorrelationSeries acc;
    double norm_acc = 0.0;
    for (int k = 0; k < kPhaseNodes; ++k) {
        const double phi = h.phi_lo + h.phase_noise_sigma * nodes[k];
        CorrelationSeries member = raw_g2_with_op(ctx, total_field(phi), grid);
        if (acc.values.empty()) {
            acc = member;
            for (auto &v : acc.values) {
                v *= weights[k];
            }
            norm_acc = weights[k] * member.normalization;
        } else {
            for (std::size_t i = 0; i < acc.values.size(); ++i) {
                acc.values[i] += weights[k] * member.values[i];
            }
            norm_acc += weights[k] * member.normalization;
        }
    }
    acc.normalization = norm_acc;
    return acc;
}

} // namespace

CorrelationSeries raw_g2_hom(const TrionParams &p, const HomodyneConfig &h, const TauGrid &grid) {
    check_grid(p, grid);
    h.validate();
    const SteadyContext ctx = make_context(p);
    CorrelationSeries out = raw_g2_hom_impl(ctx, p, h, grid);
    out.kind = CorrelationKind::raw_g2;
    return out;
}

CorrelationSeries g2_hom(const TrionParams &p, const HomodyneConfig &h, const TauGrid &grid) {
    CorrelationSeries out = normalize_g2(raw_g2_hom(p, h, grid));
    out.kind = CorrelationKind::g2_hom;
    return out;
}

CorrelationSeries g2_hom_phase_averaged(const TrionParams &p, const HomodyneConfig &h,
                                        const TauGrid &grid) {
    check_grid(p, grid);
    h.validate();
    const SteadyContext ctx = make_context(p);
    // The normalized correlation depends on phi only through e^{+-2i phi}
    // (odd moments of E_V vanish by parity), so any >= 3 equally spaced
    // phases average exactly; 8 are used for headroom.
    constexpr int kPhases = 8;
    CorrelationSeries acc;
    for (int k = 0; k < kPhases; ++k) {
        HomodyneConfig hk = h;
        hk.phi_lo = units::two_pi * k / kPhases;
        hk.phase_noise_sigma = 0.0;
        CorrelationSeries member = normalize_g2(raw_g2_hom_impl(ctx, p, hk, grid));
        if (acc.values.empty()) {
            acc = member;
        } else {
            for (std::size_t i = 0; i < acc.values.size(); ++i) {
                acc.values[i] += member.values[i];
            }
        }
    }
    for (auto &v : acc.values) {
        v /= static_cast<double>(kPhases);
    }
    acc.kind = CorrelationKind::g2_hom;
    return acc;
}

SpectrumSeries spectrum(const CorrelationSeries &raw_g1_series, int pad_factor) {
    if (raw_g1_series.kind != CorrelationKind::raw_g1) {
        throw config_error("spectrum: input must be an unnormalized raw_g1 series");
    }
    const auto &vals = raw_g1_series.values;
    const int n = static_cast<int>(vals.size());
    if (n < 16) {
        throw config_error("spectrum: series too short");
    }
    double peak = 0.0;
    for (const auto &v : vals) {
        peak = std::max(peak, std::abs(v));
    }
    double tail = 0.0;
    const int tail_start = n - std::max(1, n / 20);
    for (int k = tail_start; k < n; ++k) {
        tail = std::max(tail, std::abs(vals[k]));
    }
    if (tail > 0.02 * peak) {
        throw config_error("spectrum: G1 has not decayed at tau_max = " +
                           std::to_string(raw_g1_series.grid.tau_max) +
                           " ns (tail " + std::to_string(tail / peak) +
                           " of peak); increase tau_max to >= " +
                           std::to_string(2.0 * raw_g1_series.grid.tau_max) + " ns");
    }

    int n_pad = 1;
    while (n_pad < n * pad_factor) {
        n_pad <<= 1;
    }
    const double dtau = raw_g1_series.grid.step();

    std::vector<complex> in(n_pad, complex(0.0, 0.0));
    for (int k = 0; k < n; ++k) {
        in[k] = vals[k];
    }
    in[0] *= 0.5; // trapezoid weight at the origin

    std::vector<complex> out(n_pad);
    {
        // FFTW planning mutates global state; execution itself is thread-safe.
        static std::mutex plan_mutex;
        fftw_plan plan;
        {
            std::lock_guard<std::mutex> lock(plan_mutex);
            // FFTW_BACKWARD gives sum_k in[k] e^{+2pi i k j / N}, matching e^{+i omega tau}
            plan = fftw_plan_dft_1d(n_pad, reinterpret_cast<fftw_complex *>(in.data()),
                                    reinterpret_cast<fftw_complex *>(out.data()),
                                    FFTW_BACKWARD, FFTW_ESTIMATE);
        }
        fftw_execute(plan);
        std::lock_guard<std::mutex> lock(plan_mutex);
        fftw_destroy_plan(plan);
    }

    SpectrumSeries s;
    s.omega_grid.resize(n_pad);
    s.values.resize(n_pad);
    const double dw = units::two_pi / (n_pad * dtau);
    for (int j = 0; j < n_pad; ++j) {
        const int shifted = (j + n_pad / 2) % n_pad; // ascending omega ordering
        const double w = (shifted < n_pad / 2 ? shifted : shifted - n_pad) * dw;
        s.omega_grid[j] = w;
        s.values[j] = out[shifted].real() * dtau / units::pi;
    }
    return s;
}

std::vector<double> visibility(const CorrelationSeries &g1_series, double v0) {
    if (!(v0 > 0.0 && v0 <= 1.0)) {
        throw config_error("visibility: v0 must be in (0, 1]");
    }
    std::vector<double> out(g1_series.values.size());
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = v0 * std::abs(g1_series.values[k]);
    }
    return out;
}

} // namespace spinmod
