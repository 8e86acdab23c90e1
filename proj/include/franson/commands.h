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

#ifndef FRANSON_COMMANDS_H
#define FRANSON_COMMANDS_H

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "franson/auth.h"
#include "franson/scene.h"
#include "franson/stats.h"

namespace franson {

/// Process exit statuses of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitError = 1, kExitReject = 2, kExitIndeterminate = 3 };

struct SweepRow {
    double trim_phase = 0.0;
    double constructive_rate = 0.0;
    double destructive_rate = 0.0;
};

struct SweepTable {
    std::vector<SweepRow> rows;
    FringeFit constructive_fit;
};

/// Steps the trim phase over [0, 2 pi) on top of the scene's own trim. Rates are per generated
/// pair, summed over the grid; analytic mode uses expected rates, otherwise Monte Carlo counts
/// (dark counts included) divided by the pair budget.
SweepTable fringe_sweep(const SceneConfig &scene, int steps, std::uint64_t pairs_per_step, std::uint64_t seed,
                        bool analytic, unsigned workers = 0);

std::string sweep_csv(const SweepTable &table);

struct RenderOptions {
    std::string scene_path;
    std::uint64_t pairs = 1'000'000;
    std::uint64_t seed = 1;
    std::string out_prefix = "render";
    bool analytic = false;
    unsigned workers = 0;
    std::optional<RegionSpec> region_in;
    std::optional<RegionSpec> region_out;
};

struct SweepOptions {
    std::string scene_path;
    int steps = 32;
    std::uint64_t pairs = 100'000;
    std::uint64_t seed = 1;
    bool analytic = false;
    unsigned workers = 0;
    std::string out_path;  // empty: standard output
};

struct AuthOptions {
    std::string card_a_path;
    std::string card_b_path;
    std::string scene_path;  // optional base scene; default is a noiseless scene on the card grid
    std::uint64_t pairs = 10'000;
    std::uint64_t seed = 1;
    double threshold = kDefaultAuthThreshold;
    unsigned workers = 0;
};

struct AnalyzeOptions {
    std::string con_path;
    std::string des_path;
    RegionSpec region_in;
    RegionSpec region_out;
};

struct CardOptions {
    std::string out_path;
    int width = 64;
    int height = 64;
    std::uint32_t max_level = 20000;
    std::uint64_t seed = 1;
    std::string tamper_from;  // when set, perturb this card instead of drawing a new one
    double tamper_rms = 0.0;
};

int render_command(const RenderOptions &options, std::ostream &out);
int sweep_command(const SweepOptions &options, std::ostream &out);
int auth_command(const AuthOptions &options, std::ostream &out);
int analyze_command(const AnalyzeOptions &options, std::ostream &out);
int card_command(const CardOptions &options, std::ostream &out);

/// Base scene used by `auth` when no scene file is given.
SceneConfig default_auth_scene(const GridSpec &grid);

}  // namespace franson

#endif
