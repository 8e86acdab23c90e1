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

#ifndef FRANSON_AUTH_H
#define FRANSON_AUTH_H

#include <cstdint>
#include <string>
#include <string_view>

#include "franson/scene.h"

namespace franson {

/// A phase credential: the imprinted optical path pattern of one key card.
struct KeyCard {
    std::string id;
    PhaseMap pattern;

    void validate() const;
};

enum class Decision { kAccept, kReject, kIndeterminate };

std::string_view decision_name(Decision decision);

struct AuthResult {
    std::uint64_t n_constructive = 0;
    std::uint64_t n_destructive = 0;
    double destructive_fraction = 0.0;
    Decision decision = Decision::kIndeterminate;
    double p_value = 1.0;  // P(n_des or fewer | destructive fraction 1/2)
};

constexpr double kDefaultAuthThreshold = 0.05;

/// Scene with Alice's card in the idler clockwise arm and Bob's in the signal clockwise arm,
/// trimmed over the whole grid.
SceneConfig authentication_scene(const KeyCard &alice, const KeyCard &bob, const SceneConfig &scene_base);

/// Bucket-collected authentication run: `pairs / 2` heralded pairs per basis, summed over the grid.
/// Accepts iff the destructive fraction is at most `threshold`.
AuthResult run_authentication(const KeyCard &alice, const KeyCard &bob, std::uint64_t pairs, std::uint64_t seed,
                              const SceneConfig &scene_base, double threshold = kDefaultAuthThreshold,
                              unsigned workers = 0);

/// Destructive fraction the bucket run converges to as the pair budget grows (dark counts excluded).
double expected_destructive_fraction(const KeyCard &alice, const KeyCard &bob, const SceneConfig &scene_base);

/// Smallest N for which the threshold test "accept iff at most c destructive counts" separates
/// Binomial(N, match_fraction) from Binomial(N, mismatch_fraction) with false-accept probability
/// <= alpha and false-reject probability <= beta.
long long required_pairs(double alpha, double beta, double mismatch_fraction, double match_fraction);

/// Card plus zero-mean Gaussian path noise of the given RMS per pixel, clipped at zero.
KeyCard tamper_model(const KeyCard &card, double noise_opd_rms, std::uint64_t seed);

/// Card whose pixels carry uniform integer multiples of `opd_step` in [0, max_level].
/// With the default step of one pump wavelength, identical cards add a multiple of 2 pi to the
/// two-photon phase at every pixel.
KeyCard random_card(std::string id, const GridSpec &grid, std::uint32_t max_level, std::uint64_t seed,
                    double opd_step = kDefaultPumpWavelength);

}  // namespace franson

#endif
