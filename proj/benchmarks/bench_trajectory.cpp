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

#include <benchmark/benchmark.h>

#include "spinmod/trajectory.hpp"

namespace {

void SimulateHbtStream(benchmark::State &state) {
    spinmod::TrionParams p;
    p.gamma = 1.0 / 0.46;
    p.omega_b = 0.25 * p.gamma;
    p.omega_rabi = 0.3 * p.gamma;
    p.spin_dephasing = spinmod::MarkovianSpinDephasing{1.0 / 2.7};

    spinmod::TrajectoryConfig cfg;
    cfg.n_trajectories = 2;
    cfg.duration = static_cast<double>(state.range(0));
    cfg.seed = 5;
    cfg.detection = spinmod::HbtDetection{};

    spinmod::DetectorModel det;
    det.efficiency = 1.0;

    std::int64_t steps = 0;
    for (auto _ : state) {
        auto stream = spinmod::simulate_stream(p, cfg, det);
        benchmark::DoNotOptimize(stream.channel_a.data());
        steps += static_cast<std::int64_t>(cfg.n_trajectories * cfg.duration /
                                           (0.01 / p.max_rate()));
    }
    state.SetItemsProcessed(steps);
    state.SetLabel("items = integrator steps");
}

} // namespace

BENCHMARK(SimulateHbtStream)->Unit(benchmark::kMillisecond)->Arg(2000)->Arg(20000);
