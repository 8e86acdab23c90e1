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

#ifndef FRANSON_SCENE_IO_H
#define FRANSON_SCENE_IO_H

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "franson/errors.h"
#include "franson/scene.h"

namespace franson {

/// Scene document problems: JSON syntax (with line/column), unknown keys, missing keys, bad values.
struct SceneParseError : DomainError {
    using DomainError::DomainError;
};

/// SNR measurement requested by a scene document, referring to two named regions.
struct SnrCheck {
    std::string name;
    std::string region_in;
    std::string region_out;
    bool operator==(const SnrCheck &) const = default;
};

/// Trim performed before imaging: zero the mean phase over `region`, globally or by tilting `object`.
struct TrimDirective {
    std::string region;
    std::optional<std::string> object;
    bool operator==(const TrimDirective &) const = default;
};

struct SceneDocument {
    std::string description;
    SceneConfig scene;
    std::map<std::string, RegionSpec> regions;
    std::vector<SnrCheck> snr_checks;
    std::optional<TrimDirective> auto_trim;
};

SceneDocument parse_scene(std::string_view text);
SceneDocument load_scene(const std::string &path);

/// Canonical JSON text; parse_scene(serialize_scene(doc)) reproduces `doc`.
std::string serialize_scene(const SceneDocument &doc);

/// The scene with the document's trim directive applied.
SceneConfig prepare_scene(const SceneDocument &doc);

/// "x0,y0,x1,y1".
RegionSpec parse_region(std::string_view text);

}  // namespace franson

#endif
