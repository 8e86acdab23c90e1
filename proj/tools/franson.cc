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

// Command-line front end: render, sweep, auth, analyze, card.

#include <iostream>

#include "CLI11.hpp"
#include "franson/commands.h"
#include "franson/errors.h"
#include "franson/scene_io.h"

namespace {

CLI::Option *add_region(CLI::App *cmd, const std::string &flag, std::string &target, const std::string &help) {
    return cmd->add_option(flag, target, help + " as x0,y0,x1,y1 (inclusive pixel bounds)");
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Coincidence-imaging simulator for nonlocal erasure of phase objects"};
    app.require_subcommand(1);

    franson::RenderOptions render;
    std::string render_in;
    std::string render_out;
    auto *render_cmd = app.add_subcommand("render", "Simulate constructive/destructive frames and their difference");
    render_cmd->add_option("--scene", render.scene_path, "Scene document (JSON)")->required();
    render_cmd->add_option("--pairs", render.pairs, "Generated pairs per basis");
    render_cmd->add_option("--seed", render.seed, "Random seed");
    render_cmd->add_option("--out", render.out_prefix, "Output prefix");
    render_cmd->add_option("--workers", render.workers, "Worker threads (0 = all cores)");
    render_cmd->add_flag("--analytic", render.analytic, "Write expected counts instead of sampling");
    add_region(render_cmd, "--region-in", render_in, "Extra SNR region inside the object");
    add_region(render_cmd, "--region-out", render_out, "Extra SNR region outside the object");

    franson::SweepOptions sweep;
    auto *sweep_cmd = app.add_subcommand("sweep", "Step the trim phase over one period and fit the fringe");
    sweep_cmd->add_option("--scene", sweep.scene_path, "Scene document (JSON)")->required();
    sweep_cmd->add_option("--steps", sweep.steps, "Phase steps over [0, 2pi)");
    sweep_cmd->add_option("--pairs", sweep.pairs, "Generated pairs per basis and step");
    sweep_cmd->add_option("--seed", sweep.seed, "Random seed");
    sweep_cmd->add_option("--out", sweep.out_path, "CSV output path (default: stdout)");
    sweep_cmd->add_option("--workers", sweep.workers, "Worker threads (0 = all cores)");
    sweep_cmd->add_flag("--analytic", sweep.analytic, "Use expected rates instead of sampling");

    franson::AuthOptions auth;
    auto *auth_cmd = app.add_subcommand("auth", "Authenticate two key-card rasters by their coincidence ratio");
    auth_cmd->add_option("card_a", auth.card_a_path, "Alice's card (16-bit PGM)")->required();
    auth_cmd->add_option("card_b", auth.card_b_path, "Bob's card (16-bit PGM)")->required();
    auth_cmd->add_option("--scene", auth.scene_path, "Base scene document (default: noiseless, card-sized)");
    auth_cmd->add_option("--pairs", auth.pairs, "Total generated pairs, split over both bases");
    auth_cmd->add_option("--seed", auth.seed, "Random seed");
    auth_cmd->add_option("--threshold", auth.threshold, "Largest destructive fraction that is accepted");
    auth_cmd->add_option("--workers", auth.workers, "Worker threads (0 = all cores)");

    franson::AnalyzeOptions analyze;
    std::string analyze_in;
    std::string analyze_out;
    auto *analyze_cmd = app.add_subcommand("analyze", "SNR of a stored constructive/destructive frame pair");
    analyze_cmd->add_option("--con", analyze.con_path, "Constructive frame (PGM)")->required();
    analyze_cmd->add_option("--des", analyze.des_path, "Destructive frame (PGM)")->required();
    add_region(analyze_cmd, "--region-in", analyze_in, "Region inside the object")->required();
    add_region(analyze_cmd, "--region-out", analyze_out, "Region outside the object")->required();

    franson::CardOptions card;
    auto *card_cmd = app.add_subcommand("card", "Issue a random key card, or a tampered copy of one");
    card_cmd->add_option("--out", card.out_path, "Output PGM")->required();
    card_cmd->add_option("--width", card.width, "Card width in pixels");
    card_cmd->add_option("--height", card.height, "Card height in pixels");
    card_cmd->add_option("--levels", card.max_level, "Largest gray level of the random pattern");
    card_cmd->add_option("--seed", card.seed, "Random seed");
    card_cmd->add_option("--tamper-from", card.tamper_from, "Existing card to perturb");
    card_cmd->add_option("--rms", card.tamper_rms, "RMS path noise in meters for --tamper-from");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : franson::kExitError;
    }

    try {
        if (*render_cmd) {
            if (!render_in.empty()) render.region_in = franson::parse_region(render_in);
            if (!render_out.empty()) render.region_out = franson::parse_region(render_out);
            return franson::render_command(render, std::cout);
        }
        if (*sweep_cmd) {
            return franson::sweep_command(sweep, std::cout);
        }
        if (*auth_cmd) {
            return franson::auth_command(auth, std::cout);
        }
        if (*analyze_cmd) {
            analyze.region_in = franson::parse_region(analyze_in);
            analyze.region_out = franson::parse_region(analyze_out);
            return franson::analyze_command(analyze, std::cout);
        }
        if (*card_cmd) {
            return franson::card_command(card, std::cout);
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return franson::kExitError;
    }
    return franson::kExitError;
}
