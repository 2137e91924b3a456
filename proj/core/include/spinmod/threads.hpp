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

#ifndef SPINMOD_THREADS_HPP
#define SPINMOD_THREADS_HPP

#include <cstddef>
#include <functional>

namespace spinmod {

// Worker count: min(hardware_concurrency, SPINMOD_THREADS) with SPINMOD_THREADS=1
// forcing serial execution.
std::size_t worker_count();

// Runs fn(i) for i in [0, n). Work is split into contiguous index ranges per
// worker, so any per-index output written to pre-sized storage is identical
// regardless of the number of threads. Exceptions from workers are rethrown.
void parallel_for_index(std::size_t n, const std::function<void(std::size_t)> &fn);

} // namespace spinmod

#endif
