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

#ifndef SPINMOD_TIMETAG_IO_HPP
#define SPINMOD_TIMETAG_IO_HPP

#include <string>

#include "spinmod/trajectory.hpp"

namespace spinmod {

// Binary time-tag format, little-endian:
//   header: magic "TTAG", version u16 (= 1), duration u64 (ps), seed u64
//   records: { channel u8 (0 = A, 1 = B), time u64 (ps) }, merged across
//   channels in nondecreasing time order.
// Round-trips bit-exactly: times are stored in the stream's native integer
// picoseconds.

void write_tags(const TimeTagStream &stream, const std::string &path);
TimeTagStream read_tags(const std::string &path);

} // namespace spinmod

#endif
