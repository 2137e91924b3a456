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

#ifndef SPINMOD_PHILOX_HPP
#define SPINMOD_PHILOX_HPP

#include <array>
#include <cmath>
#include <cstdint>

namespace spinmod {

// Philox4x32-10 counter-based generator. Streams are keyed by
// (seed, stream index), so per-trajectory sequences are independent of
// scheduling and thread count.
class Philox {
  public:
    Philox(std::uint64_t seed, std::uint64_t stream) {
        key_[0] = static_cast<std::uint32_t>(seed);
        key_[1] = static_cast<std::uint32_t>(seed >> 32);
        counter_[2] = static_cast<std::uint32_t>(stream);
        counter_[3] = static_cast<std::uint32_t>(stream >> 32);
    }

    // uniform double in (0, 1)
    double uniform() {
        if (buffered_ == 0) {
            refill();
        }
        const std::uint64_t bits = buffer_[--buffered_];
        return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
    }

    // standard normal via Box-Muller
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

  private:
    static std::uint32_t mulhi(std::uint32_t a, std::uint32_t b) {
        return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) >> 32);
    }
    static std::uint32_t mullo(std::uint32_t a, std::uint32_t b) { return a * b; }

    void refill() {
        std::array<std::uint32_t, 4> c = counter_;
        std::array<std::uint32_t, 2> k = key_;
        for (int round = 0; round < 10; ++round) {
            const std::uint32_t hi0 = mulhi(0xD2511F53u, c[0]);
            const std::uint32_t lo0 = mullo(0xD2511F53u, c[0]);
            const std::uint32_t hi1 = mulhi(0xCD9E8D57u, c[2]);
            const std::uint32_t lo1 = mullo(0xCD9E8D57u, c[2]);
            c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
            k[0] += 0x9E3779B9u;
            k[1] += 0xBB67AE85u;
        }
        buffer_[0] = (static_cast<std::uint64_t>(c[0]) << 32) | c[1];
        buffer_[1] = (static_cast<std::uint64_t>(c[2]) << 32) | c[3];
        buffered_ = 2;
        if (++counter_[0] == 0) {
            ++counter_[1];
        }
    }

    std::array<std::uint32_t, 4> counter_{0, 0, 0, 0};
    std::array<std::uint32_t, 2> key_{0, 0};
    std::array<std::uint64_t, 2> buffer_{};
    int buffered_ = 0;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace spinmod

#endif
