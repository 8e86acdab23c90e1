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

#include "franson/pgm.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "franson/errors.h"

namespace franson {

namespace {

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

class HeaderScanner {
   public:
    explicit HeaderScanner(std::string_view bytes) : bytes_(bytes) {}

    // Skips whitespace and comment lines, collecting the comments.
    void skip(std::vector<std::string> &comments) {
        while (pos_ < bytes_.size()) {
            char c = bytes_[pos_];
            if (c == '#') {
                std::size_t eol = bytes_.find('\n', pos_);
                if (eol == std::string_view::npos) {
                    eol = bytes_.size();
                }
                std::string text(bytes_.substr(pos_ + 1, eol - pos_ - 1));
                if (!text.empty() && text.front() == ' ') {
                    text.erase(0, 1);
                }
                if (!text.empty() && text.back() == '\r') {
                    text.pop_back();
                }
                comments.push_back(text);
                pos_ = eol;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    long number(std::vector<std::string> &comments) {
        skip(comments);
        long v = 0;
        std::size_t start = pos_;
        while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
            v = v * 10 + (bytes_[pos_] - '0');
            if (v > 1'000'000'000) {
                throw DomainError("PGM header value too large");
            }
            ++pos_;
        }
        if (pos_ == start) {
            throw DomainError("malformed PGM header");
        }
        return v;
    }

    // Exactly one whitespace byte separates the header from the raster.
    std::size_t raster_start() {
        if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
            throw DomainError("malformed PGM header");
        }
        return pos_ + 1;
    }

   private:
    std::string_view bytes_;
    std::size_t pos_ = 2;
};

}  // namespace

std::string encode_pgm(const PgmImage &image) {
    if (image.width < 1 || image.height < 1 ||
        image.pixels.size() != static_cast<std::size_t>(image.width) * static_cast<std::size_t>(image.height)) {
        throw DomainError("PGM dimensions do not match the pixel buffer");
    }
    if (image.maxval == 0) {
        throw DomainError("PGM maxval must be positive");
    }
    std::string out = "P5\n";
    for (const auto &c : image.comments) {
        out += "# " + c + "\n";
    }
    out += std::to_string(image.width) + " " + std::to_string(image.height) + "\n" + std::to_string(image.maxval) + "\n";
    const bool wide = image.maxval > 255;
    out.reserve(out.size() + image.pixels.size() * (wide ? 2 : 1));
    for (std::uint16_t v : image.pixels) {
        v = std::min(v, image.maxval);
        if (wide) {
            out.push_back(static_cast<char>(v >> 8));
        }
        out.push_back(static_cast<char>(v & 0xFF));
    }
    return out;
}

PgmImage decode_pgm(std::string_view bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
        throw DomainError("not a binary PGM (P5) file");
    }
    PgmImage image;
    HeaderScanner scan(bytes);
    image.width = static_cast<int>(scan.number(image.comments));
    image.height = static_cast<int>(scan.number(image.comments));
    long maxval = scan.number(image.comments);
    if (image.width < 1 || image.height < 1 || maxval < 1 || maxval > 65535) {
        throw DomainError("PGM header out of range");
    }
    image.maxval = static_cast<std::uint16_t>(maxval);
    std::size_t pos = scan.raster_start();
    const bool wide = maxval > 255;
    const std::size_t n = static_cast<std::size_t>(image.width) * static_cast<std::size_t>(image.height);
    if (bytes.size() - pos < n * (wide ? 2 : 1)) {
        throw DomainError("PGM raster is truncated");
    }
    image.pixels.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (wide) {
            image.pixels[i] = static_cast<std::uint16_t>((static_cast<unsigned char>(bytes[pos]) << 8) |
                                                         static_cast<unsigned char>(bytes[pos + 1]));
            pos += 2;
        } else {
            image.pixels[i] = static_cast<unsigned char>(bytes[pos++]);
        }
        if (image.pixels[i] > image.maxval) {
            throw DomainError("PGM pixel exceeds maxval");
        }
    }
    return image;
}

void write_pgm(const std::string &path, const PgmImage &image) {
    std::string bytes = encode_pgm(image);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw DomainError("cannot write '" + path + "'");
    }
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw DomainError("failed writing '" + path + "'");
    }
}

PgmImage read_pgm(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DomainError("cannot read '" + path + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return decode_pgm(buffer.str());
}

std::string pgm_comment_value(const PgmImage &image, std::string_view key) {
    for (const auto &c : image.comments) {
        std::istringstream words(c);
        std::string word;
        while (words >> word) {
            if (word.size() > key.size() && word.compare(0, key.size(), key) == 0 && word[key.size()] == '=') {
                return word.substr(key.size() + 1);
            }
        }
    }
    return {};
}

PgmImage frame_to_pgm(const DetectionFrame &frame) {
    PgmImage image{frame.grid.width, frame.grid.height, 65535, {}, {}};
    image.comments.push_back("franson frame basis=" + std::string(basis_name(frame.basis)) +
                             " pairs=" + std::to_string(frame.pairs_budget) + " seed=" + std::to_string(frame.seed));
    image.comments.push_back("counts per pixel, saturating at 65535");
    image.pixels.reserve(frame.counts.size());
    for (auto c : frame.counts) {
        image.pixels.push_back(static_cast<std::uint16_t>(std::min<std::uint64_t>(c, 65535)));
    }
    return image;
}

PgmImage difference_to_pgm(const DifferenceImage &diff) {
    PgmImage image{diff.grid.width, diff.grid.height, 65535, {}, {}};
    image.comments.push_back("franson difference offset=32768");
    image.comments.push_back("value = 32768 + clamp(constructive - destructive, -32768, 32767)");
    image.pixels.reserve(diff.values.size());
    for (auto v : diff.values) {
        image.pixels.push_back(static_cast<std::uint16_t>(kDiffOffset + std::clamp<std::int64_t>(v, -32768, 32767)));
    }
    return image;
}

DetectionFrame pgm_to_frame(const PgmImage &image, Basis basis) {
    DetectionFrame frame;
    frame.grid.width = image.width;
    frame.grid.height = image.height;
    frame.basis = basis;
    frame.counts.assign(image.pixels.begin(), image.pixels.end());
    std::string pairs = pgm_comment_value(image, "pairs");
    std::string seed = pgm_comment_value(image, "seed");
    if (!pairs.empty()) {
        frame.pairs_budget = std::stoull(pairs);
    }
    if (!seed.empty()) {
        frame.seed = std::stoull(seed);
    }
    return frame;
}

PgmImage card_to_pgm(const KeyCard &card, double opd_scale) {
    card.validate();
    if (!(opd_scale > 0.0)) {
        throw DomainError("opd_scale must be positive");
    }
    PgmImage image{card.pattern.grid.width, card.pattern.grid.height, 65535, {}, {}};
    image.comments.push_back("franson key card id=" + card.id);
    image.comments.push_back("opd_scale_m=" + format_double(opd_scale) + " (optical path = gray level * opd_scale_m)");
    image.pixels.reserve(card.pattern.opd.size());
    for (double opd : card.pattern.opd) {
        double level = std::round(opd / opd_scale);
        if (level > 65535.0) {
            throw DomainError("key card path exceeds the 16-bit range at this opd scale");
        }
        image.pixels.push_back(static_cast<std::uint16_t>(level));
    }
    return image;
}

KeyCard pgm_to_card(const PgmImage &image, std::string id, double pitch) {
    double scale = kDefaultPumpWavelength;
    std::string text = pgm_comment_value(image, "opd_scale_m");
    if (!text.empty()) {
        scale = std::stod(text);
        if (!(scale > 0.0) || !std::isfinite(scale)) {
            throw DomainError("key card opd_scale_m must be positive");
        }
    }
    KeyCard card;
    card.id = std::move(id);
    card.pattern.grid = GridSpec{image.width, image.height, pitch};
    card.pattern.opd.reserve(image.pixels.size());
    for (auto v : image.pixels) {
        card.pattern.opd.push_back(v * scale);
    }
    return card;
}

}  // namespace franson
