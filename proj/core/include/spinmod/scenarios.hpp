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

#ifndef SPINMOD_SCENARIOS_HPP
#define SPINMOD_SCENARIOS_HPP

#include <string>

#include "spinmod/config.hpp"
#include "spinmod/table.hpp"

namespace spinmod {

// The five experiment pipelines behind the CLI subcommands. Each returns a
// ResultTable whose metadata echoes the full resolved configuration;
// re-running the same configuration reproduces the table bit-for-bit.

// Interferometric visibility: tau_ns, g1_abs, visibility.
ResultTable run_mzi(const RunConfig &cfg);

// RSF spectrum, one value column per configured detuning:
// omega column in units of gamma (or GHz with output.units = si).
ResultTable run_spectrum(const RunConfig &cfg);

// HBT intensity correlations: tau_ns, g2, g2_jittered, g2_ensemble.
ResultTable run_hbt(const RunConfig &cfg);

// Homodyne quadratures: tau_ns plus one g2_hom column per requested phi_lo
// and, when enabled, the uniform phase average.
ResultTable run_homodyne(const RunConfig &cfg);

// Trajectory engine: simulates a time-tag stream, writes it to
// out_dir/timetags.ttag, correlates it, and returns tau_ns, counts, g2_norm.
ResultTable run_trajectories(const RunConfig &cfg, const std::string &out_dir);

// Scenario dispatch by name (mzi | spectrum | hbt | homodyne | trajectories).
ResultTable run_scenario(const std::string &name, const RunConfig &cfg,
                         const std::string &out_dir);

} // namespace spinmod

#endif
