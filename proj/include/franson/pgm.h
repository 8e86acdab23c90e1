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

#ifndef FRANSON_PGM_H
#define FRANSON_PGM_H

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "franson/auth.h"
#include "franson/imaging.h"

namespace franson {

/// Binary (P5) graymap. Samples wider than 8 bits are stored big-endian.
struct PgmImage {
    int width = 0;
    int height = 0;
    std::uint16_t maxval = 65535;
    std::vector<std::uint16_t> pixels;
    std::vector<std::string> comments;  // without the leading '#'
};

std::string encode_pgm(const PgmImage &image);
PgmImage decode_pgm(std::string_view bytes);

void write_pgm(const std::string &path, const PgmImage &image);
PgmImage read_pgm(const std::string &path);

/// Looks up "key=value" in the comment lines.
std::string pgm_comment_value(const PgmImage &image, std::string_view key);

constexpr std::int64_t kDiffOffset = 32768;

/// Counts saturate at 65535.
PgmImage frame_to_pgm(const DetectionFrame &frame);

/// value = 32768 + clamp(con - des, -32768, 32767).
PgmImage difference_to_pgm(const DifferenceImage &diff);

/// Inverse of frame_to_pgm for analysis of stored frames.
DetectionFrame pgm_to_frame(const PgmImage &image, Basis basis);

/// Gray level times the "opd_scale_m" comment (default: one pump wavelength per level).
PgmImage card_to_pgm(const KeyCard &card, double opd_scale = kDefaultPumpWavelength);
KeyCard pgm_to_card(const PgmImage &image, std::string id, double pitch = GridSpec{}.pitch);

}  // namespace franson

#endif
