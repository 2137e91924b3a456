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

#include "spinmod/correlator.hpp"

#include <cmath>
#include <string>

#include "spinmod/errors.hpp"

namespace spinmod {

std::vector<double> CoincidenceHistogram::normalized() const {
    std::vector<double> out(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) {
        out[i] = normalization > 0 ? static_cast<double>(counts[i]) / normalization : 0.0;
    }
    return out;
}

CoincidenceHistogram correlate(const TimeTagStream &stream, double bin_width_ns,
                               double tau_max_ns) {
    if (stream.channel_a.empty() || stream.channel_b.empty()) {
        throw numeric_error("correlate: empty channel");
    }
    if (bin_width_ns <= 0 || tau_max_ns <= 0) {
        throw config_error("correlate: bin_width and tau_max must be positive");
    }
    if (tau_max_ns > stream.duration / 10.0) {
        throw config_error("correlate: tau_max " + std::to_string(tau_max_ns) +
                           " ns exceeds duration/10 = " + std::to_string(stream.duration / 10.0));
    }

    const auto bin_ps = static_cast<std::int64_t>(std::llround(bin_width_ns * 1e3));
    const auto tau_ps = static_cast<std::int64_t>(std::llround(tau_max_ns * 1e3));
    if (bin_ps < 1) {
        throw config_error("correlate: bin_width below 1 ps");
    }
    const int n_half = static_cast<int>(tau_ps / bin_ps);
    // pairs beyond the last full bin's half-width are dropped; the window edge
    // is (n_half + 1/2) bins
    const std::int64_t window = n_half * bin_ps + bin_ps / 2;

    CoincidenceHistogram h;
    h.bin_width = bin_width_ns;
    h.counts.assign(2 * n_half + 1, 0);

    const auto &a = stream.channel_a;
    const auto &b = stream.channel_b;
    std::size_t lo = 0;
    for (const std::uint64_t ta_u : a) {
        const auto ta = static_cast<std::int64_t>(ta_u);
        while (lo < b.size() && static_cast<std::int64_t>(b[lo]) < ta - window) {
            ++lo;
        }
        for (std::size_t j = lo; j < b.size(); ++j) {
            const auto tb = static_cast<std::int64_t>(b[j]);
            if (tb > ta + window) {
                break;
            }
            const std::int64_t lag = ta - tb;
            // round-to-nearest bin index
            const std::int64_t k =
                lag >= 0 ? (lag + bin_ps / 2) / bin_ps : -((-lag + bin_ps / 2) / bin_ps);
            if (k >= -n_half && k <= n_half) {
                ++h.counts[static_cast<std::size_t>(k + n_half)];
            }
        }
    }

    const double rate_a = static_cast<double>(a.size()) / stream.duration;
    const double rate_b = static_cast<double>(b.size()) / stream.duration;
    h.normalization = rate_a * rate_b * bin_width_ns * stream.duration;
    return h;
}

} // namespace spinmod
