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

#ifndef FRANSON_SCENE_H
#define FRANSON_SCENE_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace franson {

/// Camera pixel grid. Pixel (x, y) is stored at index y * width + x.
struct GridSpec {
    int width = 256;
    int height = 256;
    double pitch = 13e-6;  // meters per pixel at the object plane

    std::size_t size() const {
        return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    }
    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x);
    }
    void validate() const;
    bool operator==(const GridSpec &) const = default;
};

/// Inclusive pixel rectangle.
struct RegionSpec {
    int x0 = 0;
    int y0 = 0;
    int x1 = 0;
    int y1 = 0;

    std::size_t pixel_count() const {
        return static_cast<std::size_t>(x1 - x0 + 1) * static_cast<std::size_t>(y1 - y0 + 1);
    }
    bool contains(int x, int y) const {
        return x >= x0 && x <= x1 && y >= y0 && y <= y1;
    }
    bool intersects(const RegionSpec &other) const {
        return x0 <= other.x1 && other.x0 <= x1 && y0 <= other.y1 && other.y0 <= y1;
    }
    /// Throws DomainError unless non-empty and inside the grid.
    void validate(const GridSpec &grid) const;
    bool operator==(const RegionSpec &) const = default;
};

struct RectangleShape {
    int x0 = 0;
    int y0 = 0;
    int x1 = 0;
    int y1 = 0;
    bool operator==(const RectangleShape &) const = default;
};

/// Closed polygon in pixel coordinates; a pixel is covered when its center is inside (even-odd rule).
struct PolygonShape {
    std::vector<std::pair<double, double>> vertices;
    bool operator==(const PolygonShape &) const = default;
};

/// Explicit footprint: rows of `width` flags placed with the top-left corner at (x0, y0).
struct RasterMaskShape {
    int x0 = 0;
    int y0 = 0;
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> covered;
    bool operator==(const RasterMaskShape &) const = default;
};

using Shape = std::variant<RectangleShape, PolygonShape, RasterMaskShape>;

constexpr double kDefaultRefractiveIndex = 1.52;

/// A glass phase object sitting in the clockwise arm of a Sagnac interferometer.
struct GlassObject {
    std::string name;
    Shape shape;
    double thickness = 0.0;  // meters
    double refractive_index = kDefaultRefractiveIndex;
    double tilt_opd_offset = 0.0;  // meters, extra path from the insertion angle
    bool operator==(const GlassObject &) const = default;
};

/// Per-pixel optical path length of one interferometer arm, meters.
struct PhaseMap {
    GridSpec grid;
    std::vector<double> opd;
    bool operator==(const PhaseMap &) const = default;
};

/// Gaussian pump/pair profile at the object plane, in pixel units.
struct BeamProfile {
    double center_x = 127.5;
    double center_y = 127.5;
    double radius = 64.0;  // 1/e^2 intensity radius
    bool operator==(const BeamProfile &) const = default;
};

struct NoiseModel {
    double dark_counts = 0.05;  // expected accidental counts per pixel per frame
    double heralding_efficiency = 0.5;
    bool operator==(const NoiseModel &) const = default;
};

constexpr double kDefaultPumpWavelength = 355e-9;
constexpr double kDefaultCoherenceLength = 2e-5;

struct SceneConfig {
    GridSpec grid;
    double pump_wavelength = kDefaultPumpWavelength;
    double photon_wavelength = 2 * kDefaultPumpWavelength;
    double coherence_length = kDefaultCoherenceLength;
    double crystal_phase = 0.0;
    double trim_phase = 0.0;
    std::vector<GlassObject> signal_cw_objects;
    std::vector<GlassObject> idler_cw_objects;
    // Free-form path patterns (key cards) added on top of the objects in each clockwise arm.
    std::vector<PhaseMap> signal_cw_patterns;
    std::vector<PhaseMap> idler_cw_patterns;
    BeamProfile beam;
    NoiseModel noise;
    double psf_sigma = 0.0;  // pixels; 0 disables the imaging blur

    /// 2*pi/lambda for the down-converted photons, equal to omega_p / 2c.
    double wave_number() const;
    void validate() const;
    bool operator==(const SceneConfig &) const = default;
};

/// Per-pixel total two-photon phase, visibility and arm imbalance (signal minus idler, meters).
struct FringeField {
    GridSpec grid;
    std::vector<double> phi_total;
    std::vector<double> visibility;
    std::vector<double> delta;
};

/// Optical path added by a plate relative to air, including the tilt offset.
double glass_opd(const GlassObject &obj);

/// Pixel coverage flags for an object's footprint. Throws DomainError if it leaves the grid.
std::vector<std::uint8_t> footprint(const GlassObject &obj, const GridSpec &grid);

PhaseMap rasterize_arm(const std::vector<GlassObject> &objects, const GridSpec &grid);

/// exp(-(delta / coherence_length)^2).
double visibility_envelope(double delta, double coherence_length);

FringeField fringe_field(const SceneConfig &scene);

/// Uniform phase offset that brings the circular mean of phi_total over `region` to zero.
/// The result is wrapped to (-pi, pi]. Throws AmbiguousTrim if the mean resultant vanishes.
double auto_trim(const SceneConfig &scene, const RegionSpec &region);

/// Path offset whose phase contribution equals `trim` (wrapped to (-pi, pi]).
double tilt_for_trim(const SceneConfig &scene, double trim);

/// Applies a trim either globally (no object name) or as an insertion-angle tilt of the named
/// object, which must occur exactly once across both arms.
void apply_trim(SceneConfig &scene, double trim, const std::optional<std::string> &object_name = std::nullopt);

/// Wraps an angle to (-pi, pi].
double wrap_phase(double phase);

}  // namespace franson

#endif
