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

#include "franson/auth.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "franson/errors.h"
#include "franson/imaging.h"
#include "franson/philox.h"
#include "franson/stats.h"

namespace franson {

namespace {

constexpr long long kMaxRequiredPairs = 100'000'000;

// Largest c with P(K <= c | n, p) <= alpha, or -1 if even c = 0 is too likely.
long long critical_count(long long n, double p, double alpha) {
    if (binomial_cdf(n, p, 0) > alpha) {
        return -1;
    }
    long long lo = 0;
    long long hi = n;
    while (lo < hi) {
        long long mid = lo + (hi - lo + 1) / 2;
        if (binomial_cdf(n, p, mid) <= alpha) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    return lo;
}

}  // namespace

void KeyCard::validate() const {
    pattern.grid.validate();
    if (pattern.opd.size() != pattern.grid.size()) {
        throw DomainError("key card '" + id + "' pattern size does not match its grid");
    }
    for (double v : pattern.opd) {
        if (!std::isfinite(v) || v < 0.0) {
            throw DomainError("key card '" + id + "' pattern entries must be finite and non-negative");
        }
    }
}

std::string_view decision_name(Decision decision) {
    switch (decision) {
        case Decision::kAccept:
            return "accept";
        case Decision::kReject:
            return "reject";
        case Decision::kIndeterminate:
            break;
    }
    return "indeterminate";
}

SceneConfig authentication_scene(const KeyCard &alice, const KeyCard &bob, const SceneConfig &scene_base) {
    alice.validate();
    bob.validate();
    if (!(alice.pattern.grid == scene_base.grid) || !(bob.pattern.grid == scene_base.grid)) {
        throw DomainError("key cards must share the scene grid");
    }
    SceneConfig scene = scene_base;
    scene.idler_cw_patterns.push_back(alice.pattern);
    scene.signal_cw_patterns.push_back(bob.pattern);
    RegionSpec full{0, 0, scene.grid.width - 1, scene.grid.height - 1};
    try {
        apply_trim(scene, auto_trim(scene, full));
    } catch (const AmbiguousTrim &) {
        // No coherent phase to trim against; leave the scene untouched.
    }
    return scene;
}

AuthResult run_authentication(const KeyCard &alice, const KeyCard &bob, std::uint64_t pairs, std::uint64_t seed,
                              const SceneConfig &scene_base, double threshold, unsigned workers) {
    if (!(threshold > 0.0 && threshold < 0.5)) {
        throw DomainError("threshold must lie in (0, 1/2)");
    }
    SceneConfig scene = authentication_scene(alice, bob, scene_base);
    std::uint64_t per_basis = pairs / 2;
    AuthResult result;
    result.n_constructive = simulate_frame(scene, Basis::kConstructive, per_basis, seed, workers).total();
    result.n_destructive = simulate_frame(scene, Basis::kDestructive, per_basis, seed, workers).total();
    std::uint64_t total = result.n_constructive + result.n_destructive;
    if (total == 0) {
        result.decision = Decision::kIndeterminate;
        result.destructive_fraction = 0.0;
        result.p_value = 1.0;
        return result;
    }
    result.destructive_fraction = static_cast<double>(result.n_destructive) / static_cast<double>(total);
    result.decision = result.destructive_fraction <= threshold ? Decision::kAccept : Decision::kReject;
    result.p_value = binomial_cdf(static_cast<long long>(total), 0.5, static_cast<long long>(result.n_destructive));
    return result;
}

double expected_destructive_fraction(const KeyCard &alice, const KeyCard &bob, const SceneConfig &scene_base) {
    SceneConfig scene = authentication_scene(alice, bob, scene_base);
    FringeField field = fringe_field(scene);
    auto con = expected_rate_map(field, scene, Basis::kConstructive);
    auto des = expected_rate_map(field, scene, Basis::kDestructive);
    double n_con = std::accumulate(con.begin(), con.end(), 0.0);
    double n_des = std::accumulate(des.begin(), des.end(), 0.0);
    return n_des / (n_con + n_des);
}

long long required_pairs(double alpha, double beta, double mismatch_fraction, double match_fraction) {
    if (!(alpha > 0.0 && alpha < 1.0 && beta > 0.0 && beta < 1.0)) {
        throw DomainError("alpha and beta must lie in (0, 1)");
    }
    if (!(match_fraction >= 0.0 && match_fraction <= mismatch_fraction && mismatch_fraction <= 0.5)) {
        throw DomainError("fractions must satisfy 0 <= match <= mismatch <= 1/2");
    }
    if (match_fraction == mismatch_fraction) {
        throw DomainError("identical hypotheses cannot be separated by any finite sample");
    }
    for (long long n = 1; n <= kMaxRequiredPairs; ++n) {
        long long c = critical_count(n, mismatch_fraction, alpha);
        if (c < 0) {
            continue;
        }
        if (1.0 - binomial_cdf(n, match_fraction, c) <= beta) {
            return n;
        }
    }
    throw DomainError("required sample size exceeds the search limit");
}

KeyCard tamper_model(const KeyCard &card, double noise_opd_rms, std::uint64_t seed) {
    if (!(noise_opd_rms >= 0.0) || !std::isfinite(noise_opd_rms)) {
        throw DomainError("noise_opd_rms must be non-negative");
    }
    KeyCard forged = card;
    forged.id = card.id + "~tampered";
    if (noise_opd_rms == 0.0) {
        return forged;
    }
    for (std::size_t p = 0; p < forged.pattern.opd.size(); ++p) {
        double n = draw_event(seed, StreamTag::kTamper, p).normals()[0];
        forged.pattern.opd[p] = std::max(0.0, forged.pattern.opd[p] + noise_opd_rms * n);
    }
    return forged;
}

KeyCard random_card(std::string id, const GridSpec &grid, std::uint32_t max_level, std::uint64_t seed,
                    double opd_step) {
    grid.validate();
    if (!(opd_step > 0.0)) {
        throw DomainError("opd_step must be positive");
    }
    KeyCard card{std::move(id), PhaseMap{grid, std::vector<double>(grid.size())}};
    const double levels = static_cast<double>(max_level) + 1.0;
    for (std::size_t p = 0; p < grid.size(); ++p) {
        double u = draw_event(seed, StreamTag::kCardPattern, p).uniform[0];
        auto level = std::min<std::uint32_t>(max_level, static_cast<std::uint32_t>(u * levels));
        card.pattern.opd[p] = level * opd_step;
    }
    return card;
}

}  // namespace franson
