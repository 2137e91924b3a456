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

#ifndef SPINMOD_CORRELATOR_HPP
#define SPINMOD_CORRELATOR_HPP

#include <cstdint>
#include <vector>

#include "spinmod/trajectory.hpp"

namespace spinmod {

// Coincidence histogram over lag bins centered at k * bin_width for
// k in [-n_half, n_half]; a pair (t_a, t_b) lands in k = round((t_a - t_b)/w).
struct CoincidenceHistogram {
    double bin_width = 0.0;            // ns
    std::vector<std::uint64_t> counts; // size 2*n_half + 1
    double normalization = 0.0;        // accidental counts per bin: rate_a*rate_b*w*T

    int n_half() const { return (static_cast<int>(counts.size()) - 1) / 2; }
    double lag(int i) const { return (i - n_half()) * bin_width; }
    // counts normalized to the accidental level
    std::vector<double> normalized() const;
};

// All A-B pairs with |t_a - t_b| <= tau_max binned by lag, via a two-pointer
// sliding window over the sorted channels (linear in tags x mean occupancy).
// Requires tau_max <= stream.duration / 10 and nonempty channels.
CoincidenceHistogram correlate(const TimeTagStream &stream, double bin_width_ns,
                               double tau_max_ns);

} // namespace spinmod

#endif
