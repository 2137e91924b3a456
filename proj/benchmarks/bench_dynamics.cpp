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

#include "spinmod/correlations.hpp"
#include "spinmod/trion.hpp"
#include "spinmod/units.hpp"

namespace {

spinmod::TrionParams qd1() {
    spinmod::TrionParams p;
    p.gamma = 1.0 / 0.46;
    p.omega_b = 0.5 * spinmod::units::rad_per_ns_from_mhz(590.0);
    p.omega_rabi = 0.1 * p.gamma;
    p.spin_dephasing = spinmod::MarkovianSpinDephasing{2.0 / 2.7};
    return p;
}

void BuildLiouvillian(benchmark::State &state) {
    const spinmod::TrionParams p = qd1();
    for (auto _ : state) {
        auto l = spinmod::trion_liouvillian(p);
        benchmark::DoNotOptimize(l.action().data());
    }
}

void SteadyStateSolve(benchmark::State &state) {
    const spinmod::TrionParams p = qd1();
    const spinmod::Superoperator l = spinmod::trion_liouvillian(p);
    for (auto _ : state) {
        auto rho = spinmod::steady_state(l);
        benchmark::DoNotOptimize(rho.matrix().data());
    }
}

void PropagateOneLifetime(benchmark::State &state) {
    const spinmod::TrionParams p = qd1();
    const spinmod::Superoperator l = spinmod::trion_liouvillian(p);
    const auto rho0 = spinmod::DensityMatrix::basis_state(4, spinmod::basis::trion_up);
    for (auto _ : state) {
        auto rho = spinmod::propagate(l, rho0, 1.0 / p.gamma);
        benchmark::DoNotOptimize(rho.matrix().data());
    }
}

void G1FullGrid(benchmark::State &state) {
    const spinmod::TrionParams p = qd1();
    const spinmod::TauGrid grid{21.6, static_cast<int>(state.range(0))};
    for (auto _ : state) {
        auto s = spinmod::g1(p, grid);
        benchmark::DoNotOptimize(s.values.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

} // namespace

BENCHMARK(BuildLiouvillian);
BENCHMARK(SteadyStateSolve);
BENCHMARK(PropagateOneLifetime);
BENCHMARK(G1FullGrid)->Arg(1024)->Arg(4096)->Arg(16384);
