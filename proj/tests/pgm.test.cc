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

#include <cstdio>
#include <random>
#include <string>

#include "gtest/gtest.h"

#include "franson/errors.h"

using namespace franson;

TEST(pgm, encode_decode_round_trip) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        PgmImage image;
        image.width = 1 + static_cast<int>(rng() % 17);
        image.height = 1 + static_cast<int>(rng() % 13);
        image.maxval = trial % 2 ? 255 : static_cast<std::uint16_t>(256 + rng() % 65280);
        for (int i = 0; i < image.width * image.height; ++i) {
            image.pixels.push_back(static_cast<std::uint16_t>(rng() % (image.maxval + 1u)));
        }
        if (trial % 3 == 0) image.comments = {"first", "key=value other=2"};
        PgmImage back = decode_pgm(encode_pgm(image));
        EXPECT_EQ(back.width, image.width);
        EXPECT_EQ(back.height, image.height);
        EXPECT_EQ(back.maxval, image.maxval);
        EXPECT_EQ(back.pixels, image.pixels);
        EXPECT_EQ(back.comments, image.comments);
    }
}

TEST(pgm, sixteen_bit_samples_are_big_endian) {
    PgmImage image{2, 1, 65535, {0x1234, 0xABCD}, {}};
    std::string bytes = encode_pgm(image);
    EXPECT_EQ(bytes.substr(0, 3), "P5\n");
    ASSERT_GE(bytes.size(), 4u);
    std::string tail = bytes.substr(bytes.size() - 4);
    EXPECT_EQ(static_cast<unsigned char>(tail[0]), 0x12);
    EXPECT_EQ(static_cast<unsigned char>(tail[1]), 0x34);
    EXPECT_EQ(static_cast<unsigned char>(tail[2]), 0xAB);
    EXPECT_EQ(static_cast<unsigned char>(tail[3]), 0xCD);
}

TEST(pgm, decodes_hand_written_header) {
    std::string bytes = "P5 # made by hand\n3\t2 # dims\n255\n";
    bytes += std::string("\x01\x02\x03\x04\x05\xff", 6);
    PgmImage image = decode_pgm(bytes);
    EXPECT_EQ(image.width, 3);
    EXPECT_EQ(image.height, 2);
    EXPECT_EQ(image.pixels, (std::vector<std::uint16_t>{1, 2, 3, 4, 5, 255}));
    EXPECT_EQ(image.comments, (std::vector<std::string>{"made by hand", "dims"}));
}

TEST(pgm, malformed_input_is_rejected) {
    EXPECT_THROW(decode_pgm(""), DomainError);
    EXPECT_THROW(decode_pgm("P2\n1 1\n255\n0"), DomainError);
    EXPECT_THROW(decode_pgm("P5\n2 2\n255\n\x01\x02"), DomainError);
    EXPECT_THROW(decode_pgm("P5\n1 1\n65535\n\x01"), DomainError);
    EXPECT_THROW(decode_pgm("P5\n0 1\n255\n"), DomainError);
    EXPECT_THROW(decode_pgm("P5\n1 1\n70000\n\x01\x01"), DomainError);
    EXPECT_THROW(decode_pgm("P5\nx 1\n255\n\x01"), DomainError);
    EXPECT_THROW(decode_pgm("P5\n1 1\n255"), DomainError);
    EXPECT_THROW(decode_pgm(std::string("P5\n1 1\n10\n\x0b", 12)), DomainError);
    EXPECT_THROW(encode_pgm(PgmImage{2, 2, 255, {1, 2, 3}, {}}), DomainError);
    EXPECT_THROW(read_pgm("/nonexistent/file.pgm"), DomainError);
}

TEST(pgm, comment_values) {
    PgmImage image{1, 1, 255, {0}, {"franson frame basis=constructive pairs=100 seed=7", "note"}};
    EXPECT_EQ(pgm_comment_value(image, "pairs"), "100");
    EXPECT_EQ(pgm_comment_value(image, "seed"), "7");
    EXPECT_EQ(pgm_comment_value(image, "basis"), "constructive");
    EXPECT_EQ(pgm_comment_value(image, "pair"), "");
}

TEST(pgm, frame_round_trip_and_saturation) {
    DetectionFrame frame;
    frame.grid = {3, 2, 13e-6};
    frame.counts = {0, 1, 2, 65534, 65535, 100000};
    frame.basis = Basis::kDestructive;
    frame.pairs_budget = 12345;
    frame.seed = 99;
    DetectionFrame back = pgm_to_frame(decode_pgm(encode_pgm(frame_to_pgm(frame))), Basis::kDestructive);
    EXPECT_EQ(back.pairs_budget, 12345u);
    EXPECT_EQ(back.seed, 99u);
    EXPECT_EQ(back.counts, (std::vector<std::uint64_t>{0, 1, 2, 65534, 65535, 65535}));
}

TEST(pgm, difference_offset_encoding) {
    DifferenceImage diff{{5, 1, 13e-6}, {-40000, -32768, 0, 123, 40000}};
    PgmImage image = difference_to_pgm(diff);
    EXPECT_EQ(image.pixels, (std::vector<std::uint16_t>{0, 0, 32768, 32891, 65535}));
    EXPECT_EQ(pgm_comment_value(image, "offset"), "32768");
}

TEST(pgm, key_card_round_trip) {
    KeyCard card = random_card("c", GridSpec{16, 12, 13e-6}, 20000, 17);
    KeyCard back = pgm_to_card(decode_pgm(encode_pgm(card_to_pgm(card))), "c", 13e-6);
    EXPECT_EQ(back.pattern.grid, card.pattern.grid);
    for (std::size_t i = 0; i < card.pattern.opd.size(); ++i) {
        EXPECT_NEAR(back.pattern.opd[i], card.pattern.opd[i], 1e-18);
    }
    // A custom scale is carried in the header.
    KeyCard fine{"f", PhaseMap{GridSpec{2, 1, 13e-6}, {0.0, 3e-9}}};
    KeyCard fine_back = pgm_to_card(card_to_pgm(fine, 1e-9), "f");
    EXPECT_NEAR(fine_back.pattern.opd[1], 3e-9, 1e-20);
    // Without a scale comment every gray level is one pump wavelength.
    KeyCard plain = pgm_to_card(PgmImage{1, 1, 255, {4}, {}}, "p");
    EXPECT_DOUBLE_EQ(plain.pattern.opd[0], 4 * 355e-9);
    EXPECT_THROW(card_to_pgm(KeyCard{"big", PhaseMap{GridSpec{1, 1, 13e-6}, {1.0}}}), DomainError);
}

TEST(pgm, file_round_trip) {
    std::string path = ::testing::TempDir() + "franson_pgm_test.pgm";
    PgmImage image{2, 2, 1000, {0, 1, 999, 1000}, {"x=1"}};
    write_pgm(path, image);
    PgmImage back = read_pgm(path);
    EXPECT_EQ(back.pixels, image.pixels);
    EXPECT_EQ(back.maxval, 1000);
    std::remove(path.c_str());
}
