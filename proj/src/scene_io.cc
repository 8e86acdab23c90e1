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

#include "franson/scene_io.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace franson {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string join_path(const std::string &parent, const std::string &key) {
    return parent.empty() ? key : parent + "." + key;
}

class Reader {
   public:
    void check_object(const json &node, const std::string &path) const {
        if (!node.is_object()) {
            throw SceneParseError("'" + (path.empty() ? std::string("<root>") : path) + "' must be an object");
        }
    }

    void check_keys(const json &node, const std::string &path, std::initializer_list<std::string_view> allowed) const {
        check_object(node, path);
        for (const auto &item : node.items()) {
            if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
                throw SceneParseError("unknown key '" + join_path(path, item.key()) + "'");
            }
        }
    }

    const json *require(const json &node, const std::string &path, const std::string &key) {
        auto it = node.find(key);
        if (it == node.end()) {
            missing_.push_back(join_path(path, key));
            return nullptr;
        }
        return &*it;
    }

    static double number(const json &value, const std::string &path) {
        if (!value.is_number()) {
            throw SceneParseError("'" + path + "' must be a number");
        }
        return value.get<double>();
    }

    static int integer(const json &value, const std::string &path) {
        if (!value.is_number_integer()) {
            throw SceneParseError("'" + path + "' must be an integer");
        }
        return value.get<int>();
    }

    static std::string string(const json &value, const std::string &path) {
        if (!value.is_string()) {
            throw SceneParseError("'" + path + "' must be a string");
        }
        return value.get<std::string>();
    }

    static void optional_number(const json &node, const std::string &path, const char *key, double &out) {
        auto it = node.find(key);
        if (it != node.end()) {
            out = number(*it, join_path(path, key));
        }
    }

    int required_integer(const json &node, const std::string &path, const std::string &key, int fallback) {
        const json *v = require(node, path, key);
        return v ? integer(*v, join_path(path, key)) : fallback;
    }

    double required_number(const json &node, const std::string &path, const std::string &key, double fallback) {
        const json *v = require(node, path, key);
        return v ? number(*v, join_path(path, key)) : fallback;
    }

    void finish() const {
        if (missing_.empty()) {
            return;
        }
        std::string msg = "missing required keys:";
        for (const auto &m : missing_) {
            msg += " '" + m + "'";
        }
        throw SceneParseError(msg);
    }

   private:
    std::vector<std::string> missing_;
};

Shape parse_shape(Reader &r, const json &node, const std::string &path) {
    r.check_object(node, path);
    auto type_it = node.find("type");
    if (type_it == node.end()) {
        throw SceneParseError("missing required keys: '" + join_path(path, "type") + "'");
    }
    std::string type = Reader::string(*type_it, join_path(path, "type"));
    if (type == "rectangle") {
        r.check_keys(node, path, {"type", "x0", "y0", "x1", "y1"});
        RectangleShape rect;
        rect.x0 = r.required_integer(node, path, "x0", 0);
        rect.y0 = r.required_integer(node, path, "y0", 0);
        rect.x1 = r.required_integer(node, path, "x1", 0);
        rect.y1 = r.required_integer(node, path, "y1", 0);
        return rect;
    }
    if (type == "polygon") {
        r.check_keys(node, path, {"type", "vertices"});
        PolygonShape poly;
        if (const json *v = r.require(node, path, "vertices")) {
            std::string vpath = join_path(path, "vertices");
            if (!v->is_array()) {
                throw SceneParseError("'" + vpath + "' must be an array of [x, y] pairs");
            }
            for (const auto &pt : *v) {
                if (!pt.is_array() || pt.size() != 2) {
                    throw SceneParseError("'" + vpath + "' must be an array of [x, y] pairs");
                }
                poly.vertices.emplace_back(Reader::number(pt[0], vpath), Reader::number(pt[1], vpath));
            }
        }
        return poly;
    }
    if (type == "mask") {
        r.check_keys(node, path, {"type", "x0", "y0", "rows"});
        RasterMaskShape mask;
        mask.x0 = r.required_integer(node, path, "x0", 0);
        mask.y0 = r.required_integer(node, path, "y0", 0);
        if (const json *rows = r.require(node, path, "rows")) {
            std::string rpath = join_path(path, "rows");
            if (!rows->is_array() || rows->empty()) {
                throw SceneParseError("'" + rpath + "' must be a non-empty array of strings");
            }
            mask.height = static_cast<int>(rows->size());
            for (const auto &row : *rows) {
                std::string line = Reader::string(row, rpath);
                if (mask.width == 0) {
                    mask.width = static_cast<int>(line.size());
                } else if (static_cast<int>(line.size()) != mask.width) {
                    throw SceneParseError("'" + rpath + "' rows must all have the same length");
                }
                for (char c : line) {
                    if (c == '#' || c == '1') {
                        mask.covered.push_back(1);
                    } else if (c == '.' || c == '0') {
                        mask.covered.push_back(0);
                    } else {
                        throw SceneParseError("'" + rpath + "' may only contain '#', '1', '.' or '0'");
                    }
                }
            }
        }
        return mask;
    }
    throw SceneParseError("'" + join_path(path, "type") + "' must be rectangle, polygon or mask, not '" + type + "'");
}

GlassObject parse_object(Reader &r, const std::string &name, const json &node, const std::string &path) {
    r.check_keys(node, path, {"shape", "thickness", "refractive_index", "tilt_opd_offset"});
    GlassObject obj;
    obj.name = name;
    if (const json *shape = r.require(node, path, "shape")) {
        obj.shape = parse_shape(r, *shape, join_path(path, "shape"));
    }
    obj.thickness = r.required_number(node, path, "thickness", 0.0);
    Reader::optional_number(node, path, "refractive_index", obj.refractive_index);
    Reader::optional_number(node, path, "tilt_opd_offset", obj.tilt_opd_offset);
    return obj;
}

RegionSpec parse_region_node(const json &node, const std::string &path) {
    if (!node.is_array() || node.size() != 4) {
        throw SceneParseError("'" + path + "' must be [x0, y0, x1, y1]");
    }
    return RegionSpec{Reader::integer(node[0], path), Reader::integer(node[1], path), Reader::integer(node[2], path),
                      Reader::integer(node[3], path)};
}

std::vector<std::string> parse_name_list(const json &node, const std::string &path) {
    if (!node.is_array()) {
        throw SceneParseError("'" + path + "' must be an array of object names");
    }
    std::vector<std::string> names;
    for (const auto &n : node) {
        names.push_back(Reader::string(n, path));
    }
    return names;
}

std::pair<int, int> line_column(std::string_view text, std::size_t byte) {
    int line = 1;
    int column = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

ordered_json shape_json(const Shape &shape) {
    struct Visitor {
        ordered_json operator()(const RectangleShape &r) const {
            return ordered_json{{"type", "rectangle"}, {"x0", r.x0}, {"y0", r.y0}, {"x1", r.x1}, {"y1", r.y1}};
        }
        ordered_json operator()(const PolygonShape &p) const {
            ordered_json vertices = ordered_json::array();
            for (auto [x, y] : p.vertices) {
                vertices.push_back({x, y});
            }
            return ordered_json{{"type", "polygon"}, {"vertices", vertices}};
        }
        ordered_json operator()(const RasterMaskShape &m) const {
            ordered_json rows = ordered_json::array();
            for (int y = 0; y < m.height; ++y) {
                std::string row;
                for (int x = 0; x < m.width; ++x) {
                    row.push_back(m.covered[static_cast<std::size_t>(y) * m.width + x] ? '#' : '.');
                }
                rows.push_back(row);
            }
            return ordered_json{{"type", "mask"}, {"x0", m.x0}, {"y0", m.y0}, {"rows", rows}};
        }
    };
    return std::visit(Visitor{}, shape);
}

}  // namespace

SceneDocument parse_scene(std::string_view text) {
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        auto [line, column] = line_column(text, e.byte);
        throw SceneParseError("syntax error at line " + std::to_string(line) + ", column " + std::to_string(column) +
                              ": " + e.what());
    }

    Reader r;
    r.check_keys(root, "",
                 {"description", "grid", "pump_wavelength", "photon_wavelength", "coherence_length", "crystal_phase",
                  "trim_phase", "psf_sigma", "beam", "noise", "objects", "signal_cw", "idler_cw", "regions", "snr",
                  "auto_trim"});

    SceneDocument doc;
    SceneConfig &scene = doc.scene;
    if (auto it = root.find("description"); it != root.end()) {
        doc.description = Reader::string(*it, "description");
    }
    if (const json *grid = r.require(root, "", "grid")) {
        r.check_keys(*grid, "grid", {"width", "height", "pitch"});
        scene.grid.width = r.required_integer(*grid, "grid", "width", 1);
        scene.grid.height = r.required_integer(*grid, "grid", "height", 1);
        Reader::optional_number(*grid, "grid", "pitch", scene.grid.pitch);
    }
    Reader::optional_number(root, "", "pump_wavelength", scene.pump_wavelength);
    scene.photon_wavelength = 2.0 * scene.pump_wavelength;
    Reader::optional_number(root, "", "photon_wavelength", scene.photon_wavelength);
    Reader::optional_number(root, "", "coherence_length", scene.coherence_length);
    Reader::optional_number(root, "", "crystal_phase", scene.crystal_phase);
    Reader::optional_number(root, "", "trim_phase", scene.trim_phase);
    Reader::optional_number(root, "", "psf_sigma", scene.psf_sigma);

    scene.beam.center_x = (scene.grid.width - 1) / 2.0;
    scene.beam.center_y = (scene.grid.height - 1) / 2.0;
    scene.beam.radius = 0.25 * std::min(scene.grid.width, scene.grid.height);
    if (auto it = root.find("beam"); it != root.end()) {
        r.check_keys(*it, "beam", {"center", "radius"});
        if (auto c = it->find("center"); c != it->end()) {
            if (!c->is_array() || c->size() != 2) {
                throw SceneParseError("'beam.center' must be [x, y]");
            }
            scene.beam.center_x = Reader::number((*c)[0], "beam.center");
            scene.beam.center_y = Reader::number((*c)[1], "beam.center");
        }
        Reader::optional_number(*it, "beam", "radius", scene.beam.radius);
    }
    if (auto it = root.find("noise"); it != root.end()) {
        r.check_keys(*it, "noise", {"dark_counts", "heralding_efficiency"});
        Reader::optional_number(*it, "noise", "dark_counts", scene.noise.dark_counts);
        Reader::optional_number(*it, "noise", "heralding_efficiency", scene.noise.heralding_efficiency);
    }

    std::map<std::string, GlassObject> library;
    if (auto it = root.find("objects"); it != root.end()) {
        r.check_object(*it, "objects");
        for (const auto &item : it->items()) {
            library.emplace(item.key(), parse_object(r, item.key(), item.value(), join_path("objects", item.key())));
        }
    }
    auto place = [&](const char *key, std::vector<GlassObject> &arm) {
        auto it = root.find(key);
        if (it == root.end()) {
            return;
        }
        for (const auto &name : parse_name_list(*it, key)) {
            auto obj = library.find(name);
            if (obj == library.end()) {
                throw SceneParseError(std::string("'") + key + "' refers to undefined object '" + name + "'");
            }
            arm.push_back(obj->second);
        }
    };
    place("signal_cw", scene.signal_cw_objects);
    place("idler_cw", scene.idler_cw_objects);

    if (auto it = root.find("regions"); it != root.end()) {
        r.check_object(*it, "regions");
        for (const auto &item : it->items()) {
            doc.regions.emplace(item.key(), parse_region_node(item.value(), join_path("regions", item.key())));
        }
    }
    if (auto it = root.find("snr"); it != root.end()) {
        if (!it->is_array()) {
            throw SceneParseError("'snr' must be an array");
        }
        for (std::size_t i = 0; i < it->size(); ++i) {
            std::string path = "snr[" + std::to_string(i) + "]";
            const json &node = (*it)[i];
            r.check_keys(node, path, {"name", "in", "out"});
            SnrCheck check;
            if (const json *v = r.require(node, path, "name")) check.name = Reader::string(*v, path + ".name");
            if (const json *v = r.require(node, path, "in")) check.region_in = Reader::string(*v, path + ".in");
            if (const json *v = r.require(node, path, "out")) check.region_out = Reader::string(*v, path + ".out");
            doc.snr_checks.push_back(check);
        }
    }
    if (auto it = root.find("auto_trim"); it != root.end()) {
        r.check_keys(*it, "auto_trim", {"region", "object"});
        TrimDirective trim;
        if (const json *v = r.require(*it, "auto_trim", "region")) {
            trim.region = Reader::string(*v, "auto_trim.region");
        }
        if (auto obj = it->find("object"); obj != it->end()) {
            trim.object = Reader::string(*obj, "auto_trim.object");
        }
        doc.auto_trim = trim;
    }
    r.finish();

    try {
        scene.validate();
        for (const auto &[name, region] : doc.regions) {
            region.validate(scene.grid);
        }
    } catch (const SceneParseError &) {
        throw;
    } catch (const DomainError &e) {
        throw SceneParseError(e.what());
    }
    for (const auto &check : doc.snr_checks) {
        for (const auto &name : {check.region_in, check.region_out}) {
            if (!doc.regions.count(name)) {
                throw SceneParseError("snr check '" + check.name + "' refers to undefined region '" + name + "'");
            }
        }
    }
    if (doc.auto_trim && !doc.regions.count(doc.auto_trim->region)) {
        throw SceneParseError("'auto_trim.region' refers to undefined region '" + doc.auto_trim->region + "'");
    }
    return doc;
}

SceneDocument load_scene(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DomainError("cannot read scene file '" + path + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_scene(buffer.str());
}

std::string serialize_scene(const SceneDocument &doc) {
    const SceneConfig &s = doc.scene;
    ordered_json root;
    if (!doc.description.empty()) {
        root["description"] = doc.description;
    }
    root["grid"] = {{"width", s.grid.width}, {"height", s.grid.height}, {"pitch", s.grid.pitch}};
    root["pump_wavelength"] = s.pump_wavelength;
    root["photon_wavelength"] = s.photon_wavelength;
    root["coherence_length"] = s.coherence_length;
    root["crystal_phase"] = s.crystal_phase;
    root["trim_phase"] = s.trim_phase;
    root["psf_sigma"] = s.psf_sigma;
    root["beam"] = {{"center", {s.beam.center_x, s.beam.center_y}}, {"radius", s.beam.radius}};
    root["noise"] = {{"dark_counts", s.noise.dark_counts}, {"heralding_efficiency", s.noise.heralding_efficiency}};

    ordered_json objects = ordered_json::object();
    auto emit_arm = [&](const std::vector<GlassObject> &arm) {
        ordered_json names = ordered_json::array();
        for (const auto &obj : arm) {
            if (objects.contains(obj.name)) {
                names.push_back(obj.name);
                continue;
            }
            objects[obj.name] = {{"shape", shape_json(obj.shape)},
                                 {"thickness", obj.thickness},
                                 {"refractive_index", obj.refractive_index},
                                 {"tilt_opd_offset", obj.tilt_opd_offset}};
            names.push_back(obj.name);
        }
        return names;
    };
    ordered_json signal = emit_arm(s.signal_cw_objects);
    ordered_json idler = emit_arm(s.idler_cw_objects);
    root["objects"] = objects;
    root["signal_cw"] = signal;
    root["idler_cw"] = idler;

    ordered_json regions = ordered_json::object();
    for (const auto &[name, r] : doc.regions) {
        regions[name] = {r.x0, r.y0, r.x1, r.y1};
    }
    root["regions"] = regions;
    ordered_json checks = ordered_json::array();
    for (const auto &c : doc.snr_checks) {
        checks.push_back({{"name", c.name}, {"in", c.region_in}, {"out", c.region_out}});
    }
    root["snr"] = checks;
    if (doc.auto_trim) {
        ordered_json trim = {{"region", doc.auto_trim->region}};
        if (doc.auto_trim->object) {
            trim["object"] = *doc.auto_trim->object;
        }
        root["auto_trim"] = trim;
    }
    return root.dump(2) + "\n";
}

SceneConfig prepare_scene(const SceneDocument &doc) {
    SceneConfig scene = doc.scene;
    if (doc.auto_trim) {
        const RegionSpec &region = doc.regions.at(doc.auto_trim->region);
        apply_trim(scene, auto_trim(scene, region), doc.auto_trim->object);
    }
    return scene;
}

RegionSpec parse_region(std::string_view text) {
    RegionSpec r;
    int *fields[] = {&r.x0, &r.y0, &r.x1, &r.y1};
    const char *p = text.data();
    const char *end = text.data() + text.size();
    auto skip_space = [&] {
        while (p != end && (*p == ' ' || *p == '\t')) ++p;
    };
    for (int i = 0; i < 4; ++i) {
        skip_space();
        auto [next, ec] = std::from_chars(p, end, *fields[i]);
        if (ec != std::errc()) {
            throw DomainError("region must be 'x0,y0,x1,y1', got '" + std::string(text) + "'");
        }
        p = next;
        skip_space();
        if (i < 3) {
            if (p == end || *p != ',') {
                throw DomainError("region must be 'x0,y0,x1,y1', got '" + std::string(text) + "'");
            }
            ++p;
        }
    }
    if (p != end) {
        throw DomainError("region must be 'x0,y0,x1,y1', got '" + std::string(text) + "'");
    }
    return r;
}

}  // namespace franson
