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

#include "franson/scene.h"

#include <cmath>
#include <complex>
#include <random>

#include "gtest/gtest.h"

#include "franson/errors.h"
#include "franson/polarization.h"

using namespace franson;

namespace {

SceneConfig small_scene(int w = 16, int h = 12) {
    SceneConfig s;
    s.grid = {w, h, 1e-5};
    s.beam = {(w - 1) / 2.0, (h - 1) / 2.0, w / 2.0};
    return s;
}

GlassObject full_plate(const GridSpec &g, std::string name, double thickness = 1e-3) {
    return GlassObject{std::move(name), RectangleShape{0, 0, g.width - 1, g.height - 1}, thickness};
}

// Circular mean of a phase field over a region, computed from raw sums.
double circular_mean(const FringeField &f, const RegionSpec &r) {
    double c = 0.0;
    double s = 0.0;
    for (int y = r.y0; y <= r.y1; ++y) {
        for (int x = r.x0; x <= r.x1; ++x) {
            c += std::cos(f.phi_total[f.grid.index(x, y)]);
            s += std::sin(f.phi_total[f.grid.index(x, y)]);
        }
    }
    return std::atan2(s, c);
}

double angular_distance(double a, double b) {
    return std::abs(std::remainder(a - b, 2 * kPi));
}

}  // namespace

TEST(scene, glass_opd_examples) {
    EXPECT_NEAR(glass_opd({"p", RectangleShape{}, 1e-3, 1.52, 0.0}), 5.2e-4, 1e-18);
    EXPECT_EQ(glass_opd({"p", RectangleShape{}, 0.0, 1.52, 0.0}), 0.0);
    EXPECT_NEAR(glass_opd({"p", RectangleShape{}, 0.5e-3, 1.52, 0.0}), 2.6e-4, 1e-18);
    EXPECT_NEAR(glass_opd({"p", RectangleShape{}, 1e-3, 1.52, 1e-7}), 5.201e-4, 1e-18);
}

TEST(scene, rasterize_empty_and_full_plate) {
    GridSpec g{8, 6, 1e-5};
    auto empty = rasterize_arm({}, g);
    for (double v : empty.opd) EXPECT_EQ(v, 0.0);
    auto plate = rasterize_arm({full_plate(g, "plate")}, g);
    for (double v : plate.opd) EXPECT_NEAR(v, 5.2e-4, 1e-18);
}

TEST(scene, rasterize_shard_behind_plate_adds) {
    GridSpec g{10, 10, 1e-5};
    GlassObject shard{"shard", RectangleShape{2, 3, 5, 6}, 0.5e-3};
    auto map = rasterize_arm({shard, full_plate(g, "plate")}, g);
    for (int y = 0; y < g.height; ++y) {
        for (int x = 0; x < g.width; ++x) {
            bool inside = x >= 2 && x <= 5 && y >= 3 && y <= 6;
            EXPECT_NEAR(map.opd[g.index(x, y)], inside ? 7.8e-4 : 5.2e-4, 1e-18);
        }
    }
}

TEST(scene, rasterize_rejects_objects_outside_grid) {
    GridSpec g{8, 8, 1e-5};
    EXPECT_THROW(rasterize_arm({{"r", RectangleShape{4, 4, 8, 5}, 1e-3}}, g), DomainError);
    EXPECT_THROW(rasterize_arm({{"p", PolygonShape{{{0, 0}, {9, 0}, {0, 3}}}, 1e-3}}, g), DomainError);
    EXPECT_THROW(rasterize_arm({{"m", RasterMaskShape{6, 0, 3, 1, {1, 1, 1}}, 1e-3}}, g), DomainError);
}

TEST(scene, polygon_and_mask_footprints) {
    GridSpec g{8, 8, 1e-5};
    GlassObject square{"sq", PolygonShape{{{-0.5, -0.5}, {3.5, -0.5}, {3.5, 3.5}, {-0.5, 3.5}}}, 1e-3};
    auto mask = footprint(square, g);
    int covered = 0;
    for (int y = 0; y < 8; ++y) {
        for (int x = 0; x < 8; ++x) {
            covered += mask[g.index(x, y)];
            EXPECT_EQ(mask[g.index(x, y)], x <= 3 && y <= 3);
        }
    }
    EXPECT_EQ(covered, 16);

    // Right triangle with legs along the axes: pixel centers with x + y < 5.
    GlassObject tri{"tri", PolygonShape{{{0, 0}, {5, 0}, {0, 5}}}, 1e-3};
    auto tmask = footprint(tri, g);
    for (int y = 1; y < 8; ++y) {
        for (int x = 1; x < 8; ++x) {
            if (x + y != 5) EXPECT_EQ(tmask[g.index(x, y)], x + y < 5) << x << "," << y;
        }
    }

    GlassObject raster{"m", RasterMaskShape{2, 3, 3, 2, {1, 0, 1, 0, 1, 0}}, 1e-3};
    auto rmask = footprint(raster, g);
    EXPECT_EQ(rmask[g.index(2, 3)], 1);
    EXPECT_EQ(rmask[g.index(3, 3)], 0);
    EXPECT_EQ(rmask[g.index(4, 3)], 1);
    EXPECT_EQ(rmask[g.index(3, 4)], 1);
    EXPECT_EQ(std::count(rmask.begin(), rmask.end(), 1), 3);
}

TEST(scene, visibility_envelope_examples) {
    EXPECT_EQ(visibility_envelope(0.0, 2e-5), 1.0);
    EXPECT_NEAR(visibility_envelope(2e-5, 2e-5), 0.36787944117144233, 1e-15);
    double lost = visibility_envelope(5.2e-4, 2e-5);
    EXPECT_LT(lost, 1e-290);
    EXPECT_GE(lost, 0.0);
    EXPECT_THROW(visibility_envelope(1.0, 0.0), DomainError);
}

TEST(scene, visibility_envelope_even_and_decreasing) {
    double prev = 2.0;
    for (int k = 0; k <= 200; ++k) {
        double d = k * 1e-6;
        double v = visibility_envelope(d, 2e-5);
        EXPECT_EQ(v, visibility_envelope(-d, 2e-5));
        if (v > 0.0) EXPECT_LT(v, prev);
        prev = v;
    }
}

TEST(scene, fringe_field_empty_scene) {
    auto f = fringe_field(small_scene());
    for (std::size_t p = 0; p < f.grid.size(); ++p) {
        EXPECT_EQ(f.phi_total[p], 0.0);
        EXPECT_EQ(f.visibility[p], 1.0);
        EXPECT_EQ(f.delta[p], 0.0);
    }
}

TEST(scene, fringe_field_identical_plates_restore_visibility) {
    SceneConfig s = small_scene();
    s.signal_cw_objects = {full_plate(s.grid, "a")};
    s.idler_cw_objects = {full_plate(s.grid, "b")};
    s.trim_phase = 0.25;
    auto f = fringe_field(s);
    const double k = 2 * kPi / 710e-9;
    for (std::size_t p = 0; p < f.grid.size(); ++p) {
        EXPECT_EQ(f.delta[p], 0.0);
        EXPECT_EQ(f.visibility[p], 1.0);
        EXPECT_NEAR(f.phi_total[p], 2 * k * 5.2e-4 + 0.25, 1e-9);
    }
}

TEST(scene, fringe_field_idler_only_plate_kills_visibility) {
    SceneConfig s = small_scene();
    s.idler_cw_objects = {GlassObject{"p", RectangleShape{0, 0, 7, 11}, 1e-3}};
    auto f = fringe_field(s);
    for (int y = 0; y < 12; ++y) {
        for (int x = 0; x < 16; ++x) {
            std::size_t p = s.grid.index(x, y);
            if (x <= 7) {
                EXPECT_NEAR(f.delta[p], -5.2e-4, 1e-18);
                EXPECT_LT(f.visibility[p], 1e-290);
            } else {
                EXPECT_EQ(f.visibility[p], 1.0);
            }
        }
    }
}

TEST(scene, wave_number_is_half_pump_frequency_over_c) {
    SceneConfig s;
    const double c = 299792458.0;
    const double omega_p = 2 * kPi * c / s.pump_wavelength;
    EXPECT_NEAR(s.wave_number(), omega_p / (2 * c), 1e-6);
}

TEST(scene, validate_rejects_inconsistent_config) {
    SceneConfig s = small_scene();
    s.photon_wavelength = 700e-9;
    EXPECT_THROW(s.validate(), DomainError);
    s = small_scene();
    s.noise.heralding_efficiency = 0.0;
    EXPECT_THROW(s.validate(), DomainError);
    s = small_scene();
    s.coherence_length = -1;
    EXPECT_THROW(s.validate(), DomainError);
    s = small_scene();
    s.signal_cw_objects = {GlassObject{"bad", RectangleShape{0, 0, 1, 1}, 1e-3, 1.0}};
    EXPECT_THROW(s.validate(), DomainError);
}

TEST(scene, auto_trim_uniform_and_empty) {
    SceneConfig s = small_scene();
    RegionSpec all{0, 0, 15, 11};
    EXPECT_NEAR(auto_trim(s, all), 0.0, 1e-15);
    s.crystal_phase = 1.3;
    EXPECT_NEAR(auto_trim(s, all), -1.3, 1e-12);
}

TEST(scene, auto_trim_overlap_of_two_plates) {
    SceneConfig s = small_scene();
    s.signal_cw_objects = {GlassObject{"sp", RectangleShape{0, 0, 15, 5}, 1e-3}};
    s.idler_cw_objects = {GlassObject{"ip", RectangleShape{0, 0, 7, 11}, 1e-3}};
    RegionSpec overlap{0, 0, 7, 5};
    double expected = std::remainder(-(4 * kPi / 710e-9) * 5.2e-4, 2 * kPi);
    double trim = auto_trim(s, overlap);
    EXPECT_LT(angular_distance(trim, expected), 1e-9);

    SceneConfig trimmed = s;
    apply_trim(trimmed, trim);
    EXPECT_LT(std::abs(circular_mean(fringe_field(trimmed), overlap)), 1e-9);

    SceneConfig tilted = s;
    apply_trim(tilted, trim, std::string("sp"));
    EXPECT_LT(std::abs(circular_mean(fringe_field(tilted), overlap)), 1e-9);
    // Tilt trims only the tilted object's footprint; the clear region keeps phase 0.
    EXPECT_EQ(fringe_field(tilted).phi_total[s.grid.index(10, 10)], 0.0);
}

TEST(scene, auto_trim_reports_ambiguity) {
    SceneConfig s = small_scene(2, 1);
    s.idler_cw_objects = {GlassObject{"half_wave", RectangleShape{1, 0, 1, 0}, 0.0, 1.52, 355e-9}};
    EXPECT_THROW(auto_trim(s, RegionSpec{0, 0, 1, 0}), AmbiguousTrim);
}

TEST(scene, apply_trim_object_must_be_unique) {
    SceneConfig s = small_scene();
    s.signal_cw_objects = {full_plate(s.grid, "plate")};
    s.idler_cw_objects = {full_plate(s.grid, "plate")};
    EXPECT_THROW(apply_trim(s, 0.5, std::string("plate")), DomainError);
    EXPECT_THROW(apply_trim(s, 0.5, std::string("missing")), DomainError);
}

TEST(scene, swap_symmetry) {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> coord(0, 15);
    std::uniform_real_distribution<double> thick(0.0, 8e-5);
    for (int trial = 0; trial < 20; ++trial) {
        SceneConfig s = small_scene(16, 16);
        for (int k = 0; k < 3; ++k) {
            int x0 = coord(rng), y0 = coord(rng);
            int x1 = std::min(15, x0 + coord(rng)), y1 = std::min(15, y0 + coord(rng));
            auto &arm = (k % 2) ? s.signal_cw_objects : s.idler_cw_objects;
            arm.push_back(GlassObject{"o" + std::to_string(k), RectangleShape{x0, y0, x1, y1}, thick(rng)});
        }
        SceneConfig swapped = s;
        std::swap(swapped.signal_cw_objects, swapped.idler_cw_objects);
        auto a = fringe_field(s);
        auto b = fringe_field(swapped);
        for (std::size_t p = 0; p < a.grid.size(); ++p) {
            EXPECT_EQ(a.delta[p], -b.delta[p]);
            EXPECT_EQ(a.visibility[p], b.visibility[p]);
            EXPECT_NEAR(a.phi_total[p], b.phi_total[p], 1e-9);
        }
    }
}

TEST(scene, identical_objects_in_both_arms_erase) {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> coord(0, 15);
    std::uniform_real_distribution<double> thick(0.0, 2e-3);
    std::uniform_real_distribution<double> index(1.3, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        SceneConfig s = small_scene(16, 16);
        for (int k = 0; k < 4; ++k) {
            int x0 = coord(rng), y0 = coord(rng);
            GlassObject o{"o" + std::to_string(k),
                          RectangleShape{x0, y0, std::min(15, x0 + coord(rng)), std::min(15, y0 + coord(rng))},
                          thick(rng), index(rng)};
            s.signal_cw_objects.push_back(o);
            s.idler_cw_objects.push_back(o);
        }
        auto f = fringe_field(s);
        for (std::size_t p = 0; p < f.grid.size(); ++p) {
            EXPECT_EQ(f.delta[p], 0.0);
            EXPECT_EQ(f.visibility[p], 1.0);
        }
    }
}

TEST(scene, phase_is_additive_in_tilt) {
    SceneConfig s = small_scene();
    s.signal_cw_objects = {full_plate(s.grid, "plate", 0.3e-3)};
    auto before = fringe_field(s);
    const double shift = 123e-9;
    s.signal_cw_objects[0].tilt_opd_offset += shift;
    auto after = fringe_field(s);
    for (std::size_t p = 0; p < before.grid.size(); ++p) {
        EXPECT_NEAR(after.phi_total[p] - before.phi_total[p], s.wave_number() * shift, 1e-9);
    }
}

TEST(scene, wrap_phase_range) {
    EXPECT_NEAR(wrap_phase(3 * kPi), kPi, 1e-12);
    EXPECT_NEAR(wrap_phase(-kPi), kPi, 1e-12);
    EXPECT_NEAR(wrap_phase(0.5 + 8 * kPi), 0.5, 1e-12);
}
