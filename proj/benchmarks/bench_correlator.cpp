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

#include <random>

#include "spinmod/correlator.hpp"

namespace {

spinmod::TimeTagStream poisson_stream(std::size_t n_per_channel, double rate_per_ns) {
    std::mt19937_64 rng(12345);
    std::exponential_distribution<double> gap(rate_per_ns);
    spinmod::TimeTagStream s;
    for (auto *channel : {&s.channel_a, &s.channel_b}) {
        double t = 0.0;
        for (std::size_t k = 0; k < n_per_channel; ++k) {
            t += gap(rng);
            channel->push_back(static_cast<std::uint64_t>(t * 1e3) + k); // strictly increasing
        }
    }
    s.duration = static_cast<double>(std::max(s.channel_a.back(), s.channel_b.back())) * 1e-3 + 1.0;
    return s;
}

void CorrelateTwoPointer(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const spinmod::TimeTagStream s = poisson_stream(n, 0.05);
    for (auto _ : state) {
        auto h = spinmod::correlate(s, 0.256, s.duration / 20.0);
        benchmark::DoNotOptimize(h.counts.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(2 * n));
}

} // namespace

BENCHMARK(CorrelateTwoPointer)->RangeMultiplier(4)->Range(1 << 12, 1 << 20);
