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

#include "spinmod/timetag_io.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

#include "spinmod/errors.hpp"

namespace spinmod {

namespace {

constexpr char kMagic[4] = {'T', 'T', 'A', 'G'};
constexpr std::uint16_t kVersion = 1;

template <typename T> void put_le(std::ofstream &out, T value) {
    unsigned char buf[sizeof(T)];
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        buf[i] = static_cast<unsigned char>(value >> (8 * i));
    }
    out.write(reinterpret_cast<const char *>(buf), sizeof(T));
}

template <typename T> T get_le(std::ifstream &in) {
    unsigned char buf[sizeof(T)];
    in.read(reinterpret_cast<char *>(buf), sizeof(T));
    T value = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        value |= static_cast<T>(buf[i]) << (8 * i);
    }
    return value;
}

} // namespace

void write_tags(const TimeTagStream &stream, const std::string &path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw io_error("write_tags: cannot open " + path);
    }
    out.write(kMagic, 4);
    put_le<std::uint16_t>(out, kVersion);
    put_le<std::uint64_t>(out, static_cast<std::uint64_t>(std::llround(stream.duration * 1e3)));
    put_le<std::uint64_t>(out, stream.seed);

    // merged record stream in nondecreasing time order
    std::size_t ia = 0, ib = 0;
    while (ia < stream.channel_a.size() || ib < stream.channel_b.size()) {
        const bool take_a =
            ib >= stream.channel_b.size() ||
            (ia < stream.channel_a.size() && stream.channel_a[ia] <= stream.channel_b[ib]);
        if (take_a) {
            put_le<std::uint8_t>(out, 0);
            put_le<std::uint64_t>(out, stream.channel_a[ia++]);
        } else {
            put_le<std::uint8_t>(out, 1);
            put_le<std::uint64_t>(out, stream.channel_b[ib++]);
        }
    }
    if (!out) {
        throw io_error("write_tags: write failed for " + path);
    }
}

TimeTagStream read_tags(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw io_error("read_tags: cannot open " + path);
    }
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0) {
        throw io_error("read_tags: bad magic in " + path);
    }
    const auto version = get_le<std::uint16_t>(in);
    if (version != kVersion) {
        throw io_error("read_tags: unsupported version " + std::to_string(version));
    }
    TimeTagStream stream;
    stream.duration = static_cast<double>(get_le<std::uint64_t>(in)) * 1e-3;
    stream.seed = get_le<std::uint64_t>(in);
    while (true) {
        const int channel = in.get();
        if (channel == std::char_traits<char>::eof()) {
            break;
        }
        const auto t = get_le<std::uint64_t>(in);
        if (!in) {
            throw io_error("read_tags: truncated record in " + path);
        }
        if (channel == 0) {
            stream.channel_a.push_back(t);
        } else if (channel == 1) {
            stream.channel_b.push_back(t);
        } else {
            throw io_error("read_tags: invalid channel byte");
        }
    }
    return stream;
}

} // namespace spinmod
