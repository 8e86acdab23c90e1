// Copyright 2026 The Franson Erasure Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "franson/philox.h"

#include <cmath>

#include "franson/polarization.h"

namespace franson {

namespace {

// 53-bit uniform strictly inside (0, 1).
double to_open_unit(std::uint32_t hi, std::uint32_t lo) {
    std::uint64_t bits = (static_cast<std::uint64_t>(hi) << 21) ^ (lo >> 11);
    return (static_cast<double>(bits & ((1ull << 53) - 1)) + 0.5) * 0x1.0p-53;
}

}  // namespace

EventDraws draw_event(std::uint64_t seed, StreamTag stream, std::uint64_t index, std::uint32_t substream) {
    Philox4x32::Key key{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    Philox4x32::Counter c0{static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                           static_cast<std::uint32_t>(stream), substream << 1};
    Philox4x32::Counter c1 = c0;
    c1[3] |= 1u;
    auto a = Philox4x32::block(c0, key);
    auto b = Philox4x32::block(c1, key);
    return EventDraws{{to_open_unit(a[0], a[1]), to_open_unit(a[2], a[3]), to_open_unit(b[0], b[1]),
                       to_open_unit(b[2], b[3])}};
}

std::array<double, 2> EventDraws::normals() const {
    double r = std::sqrt(-2.0 * std::log(uniform[2]));
    double t = 2.0 * kPi * uniform[3];
    return {r * std::cos(t), r * std::sin(t)};
}

}  // namespace franson
