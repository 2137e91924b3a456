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

#include "spinmod/trajectory.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>

#include "spinmod/errors.hpp"
#include "spinmod/philox.hpp"
#include "spinmod/threads.hpp"
#include "spinmod/units.hpp"

namespace spinmod {

namespace {

using Mat4 = Eigen::Matrix4cd;
using Vec4 = Eigen::Vector4cd;

struct Channel {
    Mat4 op;
    Mat4 op_dag_op;
    int detector; // -1 undetected, 0 channel A, 1 channel B
};

struct MemberMachine {
    Mat4 no_jump;            // exp(-i H_eff dt)
    std::vector<Channel> channels;
    Vec4 init_states[4];     // steady-state eigenvectors
    double init_cdf[4];      // cumulative eigenvalue weights
    int n_init = 0;
};

// Builds the per-member machinery: detection-adapted channel set, effective
// Hamiltonian exponential, stationary initial-state sampler.
MemberMachine build_machine(const TrionParams &member, const DetectionMode &detection, double dt) {
    MemberMachine m;

    const CMatrix h = build_hamiltonian(member);
    const CMatrix e_v = v_port_field_op(member);
    const CMatrix e_h = h_port_field_op(member);

    // Undetected physical channels: dephasing operators (radiative decay is
    // re-expressed through the E_V/E_H port basis, an exact rewriting of the
    // dissipator since the two bases are related by a unitary mixing).
    std::vector<CMatrix> dephasing;
    for (const auto &c : build_collapse_ops(member)) {
        bool is_radiative = std::abs(c(basis::up, basis::trion_up)) > 0 ||
                            std::abs(c(basis::down, basis::trion_down)) > 0;
        if (!is_radiative) {
            dephasing.push_back(c);
        }
    }

    std::vector<Channel> channels;
    if (std::holds_alternative<HbtDetection>(detection)) {
        const CMatrix half_v = e_v / std::sqrt(2.0);
        channels.push_back({half_v, half_v.adjoint() * half_v, 0});
        channels.push_back({half_v, half_v.adjoint() * half_v, 1});
    } else {
        const auto &hom = std::get<HomodyneDetection>(detection).config;
        // LO phase relative to the mean scattered-dipole quadrature, as in the
        // regression-side g2_hom.
        Superoperator liouv = trion_liouvillian(member);
        DensityMatrix rho = steady_state(liouv);
        complex mean_h = (e_h * rho.matrix()).trace();
        complex u = std::abs(mean_h) > 1e-14 ? mean_h / std::abs(mean_h) : complex(0.0, 1.0);
        const complex beta = hom.alpha * u * std::exp(complex(0.0, hom.phi_lo));
        const CMatrix id = CMatrix::Identity(basis::dim, basis::dim);
        const CMatrix ch_a = (beta * id + e_v) / std::sqrt(2.0);
        const CMatrix ch_b = (beta * id - e_v) / std::sqrt(2.0);
        channels.push_back({ch_a, ch_a.adjoint() * ch_a, 0});
        channels.push_back({ch_b, ch_b.adjoint() * ch_b, 1});
    }
    channels.push_back({e_h, e_h.adjoint() * e_h, -1});
    for (const auto &d : dephasing) {
        channels.push_back({d, d.adjoint() * d, -1});
    }

    Mat4 sum_cdc = Mat4::Zero();
    for (const auto &c : channels) {
        sum_cdc += c.op_dag_op;
    }
    const Mat4 h_eff = h - complex(0.0, 0.5) * sum_cdc;
    m.no_jump = (complex(0.0, -dt) * h_eff).exp();
    m.channels = std::move(channels);

    // Stationary initial-state ensemble: eigendecomposition of the steady state.
    Superoperator liouv = trion_liouvillian(member);
    DensityMatrix rho_ss = steady_state(liouv);
    Eigen::SelfAdjointEigenSolver<Mat4> es(rho_ss.matrix());
    double cum = 0.0;
    for (int k = 3; k >= 0; --k) { // descending weight order
        const double w = std::max(0.0, es.eigenvalues()(k));
        if (w < 1e-12) {
            continue;
        }
        cum += w;
        m.init_states[m.n_init] = es.eigenvectors().col(k);
        m.init_cdf[m.n_init] = cum;
        ++m.n_init;
    }
    for (int k = 0; k < m.n_init; ++k) {
        m.init_cdf[k] /= cum;
    }
    return m;
}

struct TrajectoryTags {
    std::vector<std::uint64_t> a;
    std::vector<std::uint64_t> b;
};

void run_trajectory(const MemberMachine &m, double dt, double duration, const DetectorModel &det,
                    Philox &rng, double t_offset_ns, TrajectoryTags &tags) {
    Vec4 psi = m.init_states[0];
    {
        const double u = rng.uniform();
        for (int k = 0; k < m.n_init; ++k) {
            if (u <= m.init_cdf[k]) {
                psi = m.init_states[k];
                break;
            }
        }
    }

    const auto n_steps = static_cast<long long>(std::floor(duration / dt));
    const double jitter = det.jitter_sigma;
    for (long long step = 0; step < n_steps; ++step) {
        const Vec4 next = m.no_jump * psi;
        const double survive = next.squaredNorm();
        if (rng.uniform() >= survive) {
            // a jump fired; pick the channel from the pre-step weights
            double weights[8];
            double total = 0.0;
            const int nc = static_cast<int>(m.channels.size());
            for (int c = 0; c < nc; ++c) {
                const double p = (psi.adjoint() * m.channels[c].op_dag_op * psi).real()(0, 0);
                total += std::max(0.0, p);
                weights[c] = total;
            }
            int chosen = nc - 1;
            const double pick = rng.uniform() * total;
            for (int c = 0; c < nc; ++c) {
                if (pick <= weights[c]) {
                    chosen = c;
                    break;
                }
            }
            psi = m.channels[chosen].op * psi;
            psi.normalize();

            const int detector = m.channels[chosen].detector;
            if (detector >= 0 && (det.efficiency >= 1.0 || rng.uniform() < det.efficiency)) {
                double t_click = (step + 1) * dt;
                if (jitter > 0) {
                    t_click += jitter * rng.normal();
                }
                if (t_click >= 0.0 && t_click < duration) {
                    const auto ps = static_cast<std::uint64_t>(
                        std::llround((t_offset_ns + t_click) * 1e3));
                    (detector == 0 ? tags.a : tags.b).push_back(ps);
                }
            }
        } else {
            psi = next / std::sqrt(survive);
        }
    }

    // timing jitter can reorder tags within a segment
    std::sort(tags.a.begin(), tags.a.end());
    std::sort(tags.b.begin(), tags.b.end());
}

void enforce_strictly_increasing(std::vector<std::uint64_t> &tags) {
    for (std::size_t i = 1; i < tags.size(); ++i) {
        if (tags[i] <= tags[i - 1]) {
            tags[i] = tags[i - 1] + 1;
        }
    }
}

double resolve_dt(const TrionParams &p, const TrajectoryConfig &cfg) {
    const double bound = 0.01 / std::max(p.max_rate(), 1e-30);
    if (cfg.dt <= 0.0) {
        return bound;
    }
    if (cfg.dt > bound) {
        throw config_error("TrajectoryConfig: dt " + std::to_string(cfg.dt) +
                           " ns too coarse; need <= 0.01/max_rate = " + std::to_string(bound));
    }
    return cfg.dt;
}

} // namespace

TimeTagStream simulate_stream(const TrionParams &p, const TrajectoryConfig &cfg,
                              const DetectorModel &det) {
    p.validate();
    det.validate();
    if (cfg.n_trajectories < 1 || cfg.duration <= 0) {
        throw config_error("TrajectoryConfig: need n_trajectories >= 1 and duration > 0");
    }
    const double dt = resolve_dt(p, cfg);
    const double sigma_oh = p.overhauser_sigma();
    const bool quasistatic = p.is_quasistatic() && sigma_oh > 0;

    // The member machinery is shared when there is no per-trajectory disorder.
    MemberMachine shared;
    if (!quasistatic) {
        TrionParams member = p;
        if (p.is_quasistatic()) {
            member = with_overhauser_shift(p, 0.0);
        }
        shared = build_machine(member, cfg.detection, dt);
    }

    std::vector<TrajectoryTags> per_traj(cfg.n_trajectories);
    parallel_for_index(static_cast<std::size_t>(cfg.n_trajectories), [&](std::size_t k) {
        Philox rng(cfg.seed, k);
        const double offset = static_cast<double>(k) * cfg.duration;
        if (quasistatic) {
            const MemberMachine machine =
                build_machine(with_overhauser_shift(p, sigma_oh * rng.normal()), cfg.detection, dt);
            run_trajectory(machine, dt, cfg.duration, det, rng, offset, per_traj[k]);
        } else {
            run_trajectory(shared, dt, cfg.duration, det, rng, offset, per_traj[k]);
        }
    });

    TimeTagStream stream;
    stream.duration = cfg.duration * cfg.n_trajectories;
    stream.seed = cfg.seed;
    for (const auto &t : per_traj) {
        stream.channel_a.insert(stream.channel_a.end(), t.a.begin(), t.a.end());
        stream.channel_b.insert(stream.channel_b.end(), t.b.begin(), t.b.end());
    }
    enforce_strictly_increasing(stream.channel_a);
    enforce_strictly_increasing(stream.channel_b);
    return stream;
}

StreamStatistics stream_statistics(const TimeTagStream &stream, double tau_max_ns) {
    StreamStatistics s;
    s.counts_a = stream.channel_a.size();
    s.counts_b = stream.channel_b.size();
    if (stream.duration > 0) {
        s.rate_a = static_cast<double>(s.counts_a) / stream.duration;
        s.rate_b = static_cast<double>(s.counts_b) / stream.duration;
    }
    const auto tau_ps = static_cast<std::int64_t>(std::llround(tau_max_ns * 1e3));
    std::size_t lo = 0, hi = 0;
    for (const std::uint64_t a : stream.channel_a) {
        const auto at = static_cast<std::int64_t>(a);
        while (lo < stream.channel_b.size() &&
               static_cast<std::int64_t>(stream.channel_b[lo]) < at - tau_ps) {
            ++lo;
        }
        if (hi < lo) {
            hi = lo;
        }
        while (hi < stream.channel_b.size() &&
               static_cast<std::int64_t>(stream.channel_b[hi]) <= at + tau_ps) {
            ++hi;
        }
        s.pairs_within_tau += hi - lo;
    }
    return s;
}

EnsembleMoments ensemble_average_states(const TrionParams &p, const TrajectoryConfig &cfg,
                                        const DensityMatrix &rho0,
                                        const std::vector<double> &checkpoints) {
    p.validate();
    if (cfg.n_trajectories < 1) {
        throw config_error("ensemble_average_states: need n_trajectories >= 1");
    }
    const double dt = resolve_dt(p, cfg);

    // Physical channels only (no detection splitting needed for state averages).
    const CMatrix h = build_hamiltonian(p.is_quasistatic() ? with_overhauser_shift(p, 0.0) : p);
    const auto collapse = build_collapse_ops(p.is_quasistatic() ? with_overhauser_shift(p, 0.0) : p);
    std::vector<Mat4> ops, cdc;
    Mat4 sum_cdc = Mat4::Zero();
    for (const auto &c : collapse) {
        ops.push_back(c);
        cdc.push_back(c.adjoint() * c);
        sum_cdc += cdc.back();
    }
    const Mat4 h_eff = Mat4(h) - complex(0.0, 0.5) * sum_cdc;
    const Mat4 no_jump = (complex(0.0, -dt) * h_eff).exp();

    // eigenstate sampler for rho0
    Eigen::SelfAdjointEigenSolver<Mat4> es(rho0.matrix());
    std::vector<Vec4> states;
    std::vector<double> cdf;
    double cum = 0.0;
    for (int k = 3; k >= 0; --k) {
        const double w = std::max(0.0, es.eigenvalues()(k));
        if (w < 1e-12) {
            continue;
        }
        cum += w;
        states.push_back(es.eigenvectors().col(k));
        cdf.push_back(cum);
    }
    for (auto &c : cdf) {
        c /= cum;
    }

    std::vector<long long> steps_at;
    for (double t : checkpoints) {
        steps_at.push_back(static_cast<long long>(std::llround(t / dt)));
    }
    const long long total_steps = *std::max_element(steps_at.begin(), steps_at.end());

    const std::size_t n_check = checkpoints.size();
    const auto n_traj = static_cast<std::size_t>(cfg.n_trajectories);
    const std::size_t workers = std::max<std::size_t>(1, worker_count());

    struct Accum {
        std::vector<Eigen::Matrix4d> sum_re, sum_im, sum_re2, sum_im2;
    };
    std::vector<Accum> partial(workers);
    for (auto &a : partial) {
        a.sum_re.assign(n_check, Eigen::Matrix4d::Zero());
        a.sum_im.assign(n_check, Eigen::Matrix4d::Zero());
        a.sum_re2.assign(n_check, Eigen::Matrix4d::Zero());
        a.sum_im2.assign(n_check, Eigen::Matrix4d::Zero());
    }

    const std::size_t chunk = (n_traj + workers - 1) / workers;
    parallel_for_index(workers, [&](std::size_t w) {
        Accum &acc = partial[w];
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(n_traj, lo + chunk);
        for (std::size_t k = lo; k < hi; ++k) {
            Philox rng(cfg.seed, k);
            Vec4 psi = states[0];
            const double u = rng.uniform();
            for (std::size_t s = 0; s < states.size(); ++s) {
                if (u <= cdf[s]) {
                    psi = states[s];
                    break;
                }
            }
            std::size_t next_check = 0;
            for (long long step = 0; step <= total_steps; ++step) {
                while (next_check < n_check && steps_at[next_check] == step) {
                    const Mat4 proj = psi * psi.adjoint();
                    acc.sum_re[next_check] += proj.real();
                    acc.sum_im[next_check] += proj.imag();
                    acc.sum_re2[next_check] += proj.real().cwiseAbs2();
                    acc.sum_im2[next_check] += proj.imag().cwiseAbs2();
                    ++next_check;
                }
                if (step == total_steps) {
                    break;
                }
                const Vec4 next = no_jump * psi;
                const double survive = next.squaredNorm();
                if (rng.uniform() >= survive) {
                    double weights[8];
                    double total = 0.0;
                    for (std::size_t c = 0; c < ops.size(); ++c) {
                        const double pj = (psi.adjoint() * cdc[c] * psi).real()(0, 0);
                        total += std::max(0.0, pj);
                        weights[c] = total;
                    }
                    std::size_t chosen = ops.size() - 1;
                    const double pick = rng.uniform() * total;
                    for (std::size_t c = 0; c < ops.size(); ++c) {
                        if (pick <= weights[c]) {
                            chosen = c;
                            break;
                        }
                    }
                    psi = ops[chosen] * psi;
                    psi.normalize();
                } else {
                    psi = next / std::sqrt(survive);
                }
            }
        }
    });

    EnsembleMoments out;
    out.mean.resize(n_check);
    out.stderr_re.resize(n_check);
    out.stderr_im.resize(n_check);
    const double n = static_cast<double>(n_traj);
    for (std::size_t c = 0; c < n_check; ++c) {
        Eigen::Matrix4d sre = Eigen::Matrix4d::Zero(), sim = Eigen::Matrix4d::Zero();
        Eigen::Matrix4d sre2 = Eigen::Matrix4d::Zero(), sim2 = Eigen::Matrix4d::Zero();
        for (const auto &a : partial) {
            sre += a.sum_re[c];
            sim += a.sum_im[c];
            sre2 += a.sum_re2[c];
            sim2 += a.sum_im2[c];
        }
        const Eigen::Matrix4d mean_re = sre / n;
        const Eigen::Matrix4d mean_im = sim / n;
        out.mean[c] = mean_re.cast<complex>() + complex(0.0, 1.0) * mean_im.cast<complex>();
        const Eigen::Matrix4d var_re = (sre2 / n - mean_re.cwiseAbs2()).cwiseMax(0.0);
        const Eigen::Matrix4d var_im = (sim2 / n - mean_im.cwiseAbs2()).cwiseMax(0.0);
        out.stderr_re[c] = (var_re / n).cwiseSqrt().cast<complex>();
        out.stderr_im[c] = (var_im / n).cwiseSqrt().cast<complex>();
    }
    return out;
}

} // namespace spinmod
