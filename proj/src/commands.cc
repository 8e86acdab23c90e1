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

#include "franson/commands.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "franson/errors.h"
#include "franson/imaging.h"
#include "franson/philox.h"
#include "franson/pgm.h"
#include "franson/scene_io.h"

namespace franson {

namespace {

std::string region_text(const RegionSpec &r) {
    return std::to_string(r.x0) + "," + std::to_string(r.y0) + "," + std::to_string(r.x1) + "," + std::to_string(r.y1);
}

std::string num(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

DetectionFrame analytic_frame(const SceneConfig &scene, Basis basis, std::uint64_t pairs) {
    auto expected = expected_counts(scene, basis, pairs);
    DetectionFrame frame{scene.grid, std::vector<std::uint64_t>(expected.size()), basis, pairs, 0};
    for (std::size_t p = 0; p < expected.size(); ++p) {
        frame.counts[p] = static_cast<std::uint64_t>(std::llround(expected[p]));
    }
    return frame;
}

void write_text(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw DomainError("cannot write '" + path + "'");
    }
    out << text;
    if (!out) {
        throw DomainError("failed writing '" + path + "'");
    }
}

}  // namespace

SweepTable fringe_sweep(const SceneConfig &scene, int steps, std::uint64_t pairs_per_step, std::uint64_t seed,
                        bool analytic, unsigned workers) {
    if (steps < 4) {
        throw DomainError("a fringe sweep needs at least 4 steps");
    }
    if (!analytic && pairs_per_step == 0) {
        throw DomainError("a Monte Carlo sweep needs a positive pair budget");
    }
    SweepTable table;
    std::vector<double> phases;
    std::vector<double> con_rates;
    for (int k = 0; k < steps; ++k) {
        SweepRow row;
        row.trim_phase = 2.0 * kPi * k / steps;
        SceneConfig stepped = scene;
        stepped.trim_phase = scene.trim_phase + row.trim_phase;
        if (analytic) {
            FringeField field = fringe_field(stepped);
            auto con = expected_rate_map(field, stepped, Basis::kConstructive);
            auto des = expected_rate_map(field, stepped, Basis::kDestructive);
            row.constructive_rate = std::accumulate(con.begin(), con.end(), 0.0);
            row.destructive_rate = std::accumulate(des.begin(), des.end(), 0.0);
        } else {
            std::uint64_t step_seed = mix_seed(seed ^ mix_seed(static_cast<std::uint64_t>(k)));
            double n = static_cast<double>(pairs_per_step);
            row.constructive_rate =
                simulate_frame(stepped, Basis::kConstructive, pairs_per_step, step_seed, workers).total() / n;
            row.destructive_rate =
                simulate_frame(stepped, Basis::kDestructive, pairs_per_step, step_seed, workers).total() / n;
        }
        phases.push_back(row.trim_phase);
        con_rates.push_back(row.constructive_rate);
        table.rows.push_back(row);
    }
    table.constructive_fit = fit_fringe(phases, con_rates);
    return table;
}

std::string sweep_csv(const SweepTable &table) {
    std::ostringstream os;
    os.precision(17);
    os << "trim_phase,constructive_rate,destructive_rate\n";
    for (const auto &row : table.rows) {
        os << row.trim_phase << "," << row.constructive_rate << "," << row.destructive_rate << "\n";
    }
    os << "# fitted_visibility=" << table.constructive_fit.visibility << "\n";
    os << "# fitted_phase_offset=" << table.constructive_fit.phase << "\n";
    os << "# fitted_mean_rate=" << table.constructive_fit.offset << "\n";
    return os.str();
}

int render_command(const RenderOptions &options, std::ostream &out) {
    SceneDocument doc = load_scene(options.scene_path);
    SceneConfig scene = prepare_scene(doc);

    std::vector<SnrCheck> checks = doc.snr_checks;
    if (options.region_in || options.region_out) {
        if (!options.region_in || !options.region_out) {
            throw DomainError("--region-in and --region-out must be given together");
        }
        doc.regions["cli_in"] = *options.region_in;
        doc.regions["cli_out"] = *options.region_out;
        checks.push_back({"cli", "cli_in", "cli_out"});
    }

    DetectionFrame con;
    DetectionFrame des;
    if (options.analytic) {
        con = analytic_frame(scene, Basis::kConstructive, options.pairs);
        des = analytic_frame(scene, Basis::kDestructive, options.pairs);
    } else {
        con = simulate_frame(scene, Basis::kConstructive, options.pairs, options.seed, options.workers);
        des = simulate_frame(scene, Basis::kDestructive, options.pairs, options.seed, options.workers);
    }
    DifferenceImage diff = difference_image(con, des);

    std::filesystem::path parent = std::filesystem::path(options.out_prefix).parent_path();
    if (!parent.empty()) {
        std::filesystem::create_directories(parent);
    }
    write_pgm(options.out_prefix + "_con.pgm", frame_to_pgm(con));
    write_pgm(options.out_prefix + "_des.pgm", frame_to_pgm(des));
    write_pgm(options.out_prefix + "_diff.pgm", difference_to_pgm(diff));

    std::ostringstream stats;
    stats << "format = franson-render-stats/1\n";
    stats << "scene = " << options.scene_path << "\n";
    stats << "mode = " << (options.analytic ? "analytic" : "monte_carlo") << "\n";
    stats << "seed = " << options.seed << "\n";
    stats << "pairs_per_basis = " << options.pairs << "\n";
    stats << "dark_counts_per_pixel = " << num(scene.noise.dark_counts) << "\n";
    stats << "trim_phase = " << num(scene.trim_phase) << "\n";
    stats << "total_constructive = " << con.total() << "\n";
    stats << "total_destructive = " << des.total() << "\n";
    for (const auto &check : checks) {
        const RegionSpec &in = doc.regions.at(check.region_in);
        const RegionSpec &outside = doc.regions.at(check.region_out);
        SnrReport report = options.analytic ? expected_snr(scene, options.pairs, in, outside) : snr(diff, in, outside);
        std::string key = "snr." + check.name + ".";
        stats << key << "region_in = " << region_text(in) << "\n";
        stats << key << "region_out = " << region_text(outside) << "\n";
        stats << key << "mean_in = " << num(report.mean_in) << "\n";
        stats << key << "mean_out = " << num(report.mean_out) << "\n";
        stats << key << "sigma = " << num(report.sigma) << "\n";
        stats << key << "snr = " << num(report.snr) << "\n";
    }
    write_text(options.out_prefix + "_stats.txt", stats.str());
    out << stats.str();
    return kExitOk;
}

int sweep_command(const SweepOptions &options, std::ostream &out) {
    SceneConfig scene = prepare_scene(load_scene(options.scene_path));
    SweepTable table = fringe_sweep(scene, options.steps, options.pairs, options.seed, options.analytic, options.workers);
    std::string csv = sweep_csv(table);
    if (options.out_path.empty()) {
        out << csv;
    } else {
        write_text(options.out_path, csv);
        out << "fitted_visibility = " << num(table.constructive_fit.visibility) << "\n";
        out << "fitted_phase_offset = " << num(table.constructive_fit.phase) << "\n";
    }
    return kExitOk;
}

SceneConfig default_auth_scene(const GridSpec &grid) {
    SceneConfig scene;
    scene.grid = grid;
    scene.beam.center_x = (grid.width - 1) / 2.0;
    scene.beam.center_y = (grid.height - 1) / 2.0;
    scene.beam.radius = 0.25 * std::min(grid.width, grid.height);
    scene.noise.dark_counts = 0.0;
    return scene;
}

int auth_command(const AuthOptions &options, std::ostream &out) {
    PgmImage a = read_pgm(options.card_a_path);
    PgmImage b = read_pgm(options.card_b_path);
    if (a.width != b.width || a.height != b.height) {
        throw DomainError("key cards differ in size: " + std::to_string(a.width) + "x" + std::to_string(a.height) +
                          " vs " + std::to_string(b.width) + "x" + std::to_string(b.height));
    }
    SceneConfig base;
    if (options.scene_path.empty()) {
        base = default_auth_scene(GridSpec{a.width, a.height, GridSpec{}.pitch});
    } else {
        base = prepare_scene(load_scene(options.scene_path));
        if (base.grid.width != a.width || base.grid.height != a.height) {
            throw DomainError("key cards do not match the scene grid");
        }
    }
    KeyCard alice = pgm_to_card(a, options.card_a_path, base.grid.pitch);
    KeyCard bob = pgm_to_card(b, options.card_b_path, base.grid.pitch);
    AuthResult result =
        run_authentication(alice, bob, options.pairs, options.seed, base, options.threshold, options.workers);
    out << "n_constructive = " << result.n_constructive << "\n";
    out << "n_destructive = " << result.n_destructive << "\n";
    out << "destructive_fraction = " << num(result.destructive_fraction) << "\n";
    out << "threshold = " << num(options.threshold) << "\n";
    out << "decision = " << decision_name(result.decision) << "\n";
    out << "p_value = " << num(result.p_value) << "\n";
    switch (result.decision) {
        case Decision::kAccept:
            return kExitOk;
        case Decision::kReject:
            return kExitReject;
        case Decision::kIndeterminate:
            break;
    }
    return kExitIndeterminate;
}

int analyze_command(const AnalyzeOptions &options, std::ostream &out) {
    DetectionFrame con = pgm_to_frame(read_pgm(options.con_path), Basis::kConstructive);
    DetectionFrame des = pgm_to_frame(read_pgm(options.des_path), Basis::kDestructive);
    SnrReport report = snr(difference_image(con, des), options.region_in, options.region_out);
    out << "region_in = " << region_text(options.region_in) << "\n";
    out << "region_out = " << region_text(options.region_out) << "\n";
    out << "mean_in = " << num(report.mean_in) << "\n";
    out << "mean_out = " << num(report.mean_out) << "\n";
    out << "sigma = " << num(report.sigma) << "\n";
    out << "snr = " << num(report.snr) << "\n";
    return kExitOk;
}

int card_command(const CardOptions &options, std::ostream &out) {
    KeyCard card;
    if (options.tamper_from.empty()) {
        card = random_card("card-" + std::to_string(options.seed), GridSpec{options.width, options.height, GridSpec{}.pitch},
                           options.max_level, options.seed);
    } else {
        card = tamper_model(pgm_to_card(read_pgm(options.tamper_from), options.tamper_from), options.tamper_rms,
                            options.seed);
    }
    write_pgm(options.out_path, card_to_pgm(card));
    out << "wrote " << options.out_path << " (" << card.pattern.grid.width << "x" << card.pattern.grid.height << ")\n";
    return kExitOk;
}

}  // namespace franson
