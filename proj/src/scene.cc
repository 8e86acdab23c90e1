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

#include "franson/errors.h"
#include "franson/polarization.h"

namespace franson {

void GridSpec::validate() const {
    if (width < 1 || height < 1) {
        throw DomainError("grid width and height must be at least 1");
    }
    if (!(pitch > 0.0) || !std::isfinite(pitch)) {
        throw DomainError("grid pitch must be positive");
    }
}

void RegionSpec::validate(const GridSpec &grid) const {
    if (x1 < x0 || y1 < y0) {
        throw DomainError("region is empty");
    }
    if (x0 < 0 || y0 < 0 || x1 >= grid.width || y1 >= grid.height) {
        throw DomainError("region lies outside the grid");
    }
}

double SceneConfig::wave_number() const {
    return 2.0 * kPi / photon_wavelength;
}

void SceneConfig::validate() const {
    grid.validate();
    if (!(pump_wavelength > 0.0) || !std::isfinite(pump_wavelength)) {
        throw DomainError("pump_wavelength must be positive");
    }
    if (std::abs(photon_wavelength - 2.0 * pump_wavelength) > 1e-15 * 2.0 * pump_wavelength) {
        throw DomainError("photon_wavelength must equal twice pump_wavelength");
    }
    if (!(coherence_length > 0.0) || !std::isfinite(coherence_length)) {
        throw DomainError("coherence_length must be positive");
    }
    if (!std::isfinite(crystal_phase) || !std::isfinite(trim_phase)) {
        throw DomainError("crystal_phase and trim_phase must be finite");
    }
    if (!(noise.heralding_efficiency > 0.0 && noise.heralding_efficiency <= 1.0)) {
        throw DomainError("heralding_efficiency must lie in (0, 1]");
    }
    if (!(noise.dark_counts >= 0.0) || !std::isfinite(noise.dark_counts)) {
        throw DomainError("dark_counts must be non-negative");
    }
    if (!(beam.radius > 0.0) || !std::isfinite(beam.center_x) || !std::isfinite(beam.center_y)) {
        throw DomainError("beam radius must be positive and its center finite");
    }
    if (!(psf_sigma >= 0.0) || !std::isfinite(psf_sigma)) {
        throw DomainError("psf_sigma must be non-negative");
    }
    for (const auto *arm : {&signal_cw_objects, &idler_cw_objects}) {
        for (const auto &obj : *arm) {
            if (!(obj.thickness >= 0.0) || !std::isfinite(obj.thickness)) {
                throw DomainError("object '" + obj.name + "': thickness must be non-negative");
            }
            if (!(obj.refractive_index > 1.0) || !std::isfinite(obj.refractive_index)) {
                throw DomainError("object '" + obj.name + "': refractive_index must exceed 1");
            }
            if (!std::isfinite(obj.tilt_opd_offset)) {
                throw DomainError("object '" + obj.name + "': tilt_opd_offset must be finite");
            }
            footprint(obj, grid);
        }
    }
    for (const auto *arm : {&signal_cw_patterns, &idler_cw_patterns}) {
        for (const auto &pattern : *arm) {
            if (!(pattern.grid == grid) || pattern.opd.size() != grid.size()) {
                throw DomainError("phase pattern grid does not match the scene grid");
            }
            for (double v : pattern.opd) {
                if (!std::isfinite(v)) {
                    throw DomainError("phase pattern contains a non-finite entry");
                }
            }
        }
    }
}

double glass_opd(const GlassObject &obj) {
    return (obj.refractive_index - 1.0) * obj.thickness + obj.tilt_opd_offset;
}

namespace {

bool point_in_polygon(const std::vector<std::pair<double, double>> &poly, double px, double py) {
    bool inside = false;
    std::size_t n = poly.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        auto [xi, yi] = poly[i];
        auto [xj, yj] = poly[j];
        if ((yi > py) != (yj > py)) {
            double cross_x = xj + (py - yj) * (xi - xj) / (yi - yj);
            if (px < cross_x) {
                inside = !inside;
            }
        }
    }
    return inside;
}

struct FootprintVisitor {
    const GridSpec &grid;
    const std::string &name;

    [[noreturn]] void outside() const {
        throw DomainError("object '" + name + "' footprint lies outside the grid");
    }

    std::vector<std::uint8_t> operator()(const RectangleShape &r) const {
        if (r.x1 < r.x0 || r.y1 < r.y0) {
            throw DomainError("object '" + name + "' rectangle is empty");
        }
        if (r.x0 < 0 || r.y0 < 0 || r.x1 >= grid.width || r.y1 >= grid.height) {
            outside();
        }
        std::vector<std::uint8_t> mask(grid.size(), 0);
        for (int y = r.y0; y <= r.y1; ++y) {
            for (int x = r.x0; x <= r.x1; ++x) {
                mask[grid.index(x, y)] = 1;
            }
        }
        return mask;
    }

    std::vector<std::uint8_t> operator()(const PolygonShape &p) const {
        if (p.vertices.size() < 3) {
            throw DomainError("object '" + name + "' polygon needs at least 3 vertices");
        }
        for (auto [vx, vy] : p.vertices) {
            if (!(vx >= -0.5 && vx <= grid.width - 0.5 && vy >= -0.5 && vy <= grid.height - 0.5)) {
                outside();
            }
        }
        std::vector<std::uint8_t> mask(grid.size(), 0);
        for (int y = 0; y < grid.height; ++y) {
            for (int x = 0; x < grid.width; ++x) {
                if (point_in_polygon(p.vertices, x, y)) {
                    mask[grid.index(x, y)] = 1;
                }
            }
        }
        return mask;
    }

    std::vector<std::uint8_t> operator()(const RasterMaskShape &m) const {
        if (m.width < 0 || m.height < 0 ||
            m.covered.size() != static_cast<std::size_t>(m.width) * static_cast<std::size_t>(m.height)) {
            throw DomainError("object '" + name + "' raster mask size does not match its dimensions");
        }
        if (m.x0 < 0 || m.y0 < 0 || m.x0 + m.width > grid.width || m.y0 + m.height > grid.height) {
            outside();
        }
        std::vector<std::uint8_t> mask(grid.size(), 0);
        for (int y = 0; y < m.height; ++y) {
            for (int x = 0; x < m.width; ++x) {
                if (m.covered[static_cast<std::size_t>(y) * m.width + x]) {
                    mask[grid.index(m.x0 + x, m.y0 + y)] = 1;
                }
            }
        }
        return mask;
    }
};

}  // namespace

std::vector<std::uint8_t> footprint(const GlassObject &obj, const GridSpec &grid) {
    return std::visit(FootprintVisitor{grid, obj.name}, obj.shape);
}

PhaseMap rasterize_arm(const std::vector<GlassObject> &objects, const GridSpec &grid) {
    grid.validate();
    PhaseMap map{grid, std::vector<double>(grid.size(), 0.0)};
    for (const auto &obj : objects) {
        auto mask = footprint(obj, grid);
        double opd = glass_opd(obj);
        for (std::size_t k = 0; k < mask.size(); ++k) {
            if (mask[k]) {
                map.opd[k] += opd;
            }
        }
    }
    return map;
}

double visibility_envelope(double delta, double coherence_length) {
    if (!(coherence_length > 0.0)) {
        throw DomainError("coherence_length must be positive");
    }
    double r = delta / coherence_length;
    return std::exp(-r * r);
}

FringeField fringe_field(const SceneConfig &scene) {
    scene.validate();
    PhaseMap signal = rasterize_arm(scene.signal_cw_objects, scene.grid);
    PhaseMap idler = rasterize_arm(scene.idler_cw_objects, scene.grid);
    for (const auto &pattern : scene.signal_cw_patterns) {
        for (std::size_t p = 0; p < pattern.opd.size(); ++p) {
            signal.opd[p] += pattern.opd[p];
        }
    }
    for (const auto &pattern : scene.idler_cw_patterns) {
        for (std::size_t p = 0; p < pattern.opd.size(); ++p) {
            idler.opd[p] += pattern.opd[p];
        }
    }
    const double k = scene.wave_number();
    const double offset = scene.crystal_phase + scene.trim_phase;
    FringeField field{scene.grid, {}, {}, {}};
    const std::size_t n = scene.grid.size();
    field.phi_total.resize(n);
    field.visibility.resize(n);
    field.delta.resize(n);
    for (std::size_t p = 0; p < n; ++p) {
        double delta = signal.opd[p] - idler.opd[p];
        field.delta[p] = delta;
        field.phi_total[p] = k * (signal.opd[p] + idler.opd[p]) + offset;
        field.visibility[p] = visibility_envelope(delta, scene.coherence_length);
    }
    return field;
}

double wrap_phase(double phase) {
    double w = std::remainder(phase, 2.0 * kPi);
    if (w <= -kPi) {
        w += 2.0 * kPi;
    }
    return w;
}

double auto_trim(const SceneConfig &scene, const RegionSpec &region) {
    region.validate(scene.grid);
    FringeField field = fringe_field(scene);
    std::complex<double> sum = 0.0;
    for (int y = region.y0; y <= region.y1; ++y) {
        for (int x = region.x0; x <= region.x1; ++x) {
            sum += std::polar(1.0, field.phi_total[scene.grid.index(x, y)]);
        }
    }
    double resultant = std::abs(sum) / static_cast<double>(region.pixel_count());
    if (resultant < 1e-12) {
        throw AmbiguousTrim("circular mean of the region phase is undefined");
    }
    return wrap_phase(-std::arg(sum));
}

double tilt_for_trim(const SceneConfig &scene, double trim) {
    return wrap_phase(trim) / scene.wave_number();
}

void apply_trim(SceneConfig &scene, double trim, const std::optional<std::string> &object_name) {
    if (!object_name) {
        scene.trim_phase = wrap_phase(scene.trim_phase + trim);
        return;
    }
    GlassObject *target = nullptr;
    int hits = 0;
    for (auto *arm : {&scene.signal_cw_objects, &scene.idler_cw_objects}) {
        for (auto &obj : *arm) {
            if (obj.name == *object_name) {
                target = &obj;
                ++hits;
            }
        }
    }
    if (hits != 1) {
        throw DomainError("trim object '" + *object_name + "' must appear exactly once across both arms");
    }
    target->tilt_opd_offset += tilt_for_trim(scene, trim);
}

}  // namespace franson
