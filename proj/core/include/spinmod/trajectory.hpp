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

#ifndef SPINMOD_TRAJECTORY_HPP
#define SPINMOD_TRAJECTORY_HPP

#include <cstdint>
#include <variant>
#include <vector>

#include "spinmod/correlations.hpp"
#include "spinmod/ensemble.hpp"
#include "spinmod/trion.hpp"

namespace spinmod {

// Monte Carlo wavefunction unraveling of the trion master equation, emitting
// photon time tags. Independent of the regression machinery; used to
// cross-validate it.

struct HbtDetection {};
struct HomodyneDetection {
    HomodyneConfig config;
};
using DetectionMode = std::variant<HbtDetection, HomodyneDetection>;

struct TrajectoryConfig {
    int n_trajectories = 1;
    double duration = 0.0; // ns, per trajectory segment
    double dt = 0.0;       // ns; 0 selects 0.01 / max_rate, larger values are rejected
    std::uint64_t seed = 0;
    DetectionMode detection = HbtDetection{};
};

// Photon time tags in integer picoseconds, strictly increasing per channel.
// Trajectory segments are concatenated at offsets k * duration; the stream
// duration is n_trajectories * cfg.duration.
struct TimeTagStream {
    std::vector<std::uint64_t> channel_a; // ps
    std::vector<std::uint64_t> channel_b; // ps
    double duration = 0.0;                // ns, total
    std::uint64_t seed = 0;
};

// Jump unraveling with fixed dt. The no-jump map is the exact
// exp(-i H_eff dt) (precomputed once); jumps are drawn per step with
// probability 1 - |A psi|^2 and distributed over channels by dt <C_k^dag C_k>.
// HBT detection splits the V port 50:50 onto channels A/B; homodyne mixes the
// V field with the classical LO at a balanced splitter,
// C_{A,B} = (alpha u e^{i phi} +- E_V)/sqrt(2). Detection efficiency thins
// tags; detector timing jitter adds Gaussian noise per tag. Each trajectory
// starts from an eigenstate of its member's steady state (stationary
// ensemble); quasistatic spin dephasing draws a frozen Overhauser shift per
// trajectory. Deterministic for a fixed seed, independent of thread count.
TimeTagStream simulate_stream(const TrionParams &p, const TrajectoryConfig &cfg,
                              const DetectorModel &det);

struct StreamStatistics {
    std::uint64_t counts_a = 0;
    std::uint64_t counts_b = 0;
    double rate_a = 0.0; // per ns
    double rate_b = 0.0;
    std::uint64_t pairs_within_tau = 0;
};

StreamStatistics stream_statistics(const TimeTagStream &stream, double tau_max_ns);

// Unraveling-consistency probe: evolves n_trajectories from rho0 (eigenstate
// sampling) with no detection channels beyond the physical collapse set and
// returns the ensemble mean projector and the standard error of each entry's
// real and imaginary parts at the requested checkpoint times.
struct EnsembleMoments {
    std::vector<CMatrix> mean;     // one per checkpoint
    std::vector<CMatrix> stderr_re;
    std::vector<CMatrix> stderr_im;
};
EnsembleMoments ensemble_average_states(const TrionParams &p, const TrajectoryConfig &cfg,
                                        const DensityMatrix &rho0,
                                        const std::vector<double> &checkpoints);

} // namespace spinmod

#endif
