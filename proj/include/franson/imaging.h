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

#ifndef FRANSON_IMAGING_H
#define FRANSON_IMAGING_H

#include <cstdint>
#include <string_view>
#include <vector>

#include "franson/polarization.h"
#include "franson/scene.h"

namespace franson {

/// Post-selection setting: both plates at +22.5 deg, or signal +22.5 / idler -22.5 deg.
enum class Basis { kConstructive, kDestructive };

std::string_view basis_name(Basis basis);
WaveplateSetting signal_plate(Basis basis);
WaveplateSetting idler_plate(Basis basis);

/// Heralded camera frame for one post-selection basis.
struct DetectionFrame {
    GridSpec grid;
    std::vector<std::uint64_t> counts;
    Basis basis = Basis::kConstructive;
    std::uint64_t pairs_budget = 0;
    std::uint64_t seed = 0;

    std::uint64_t total() const;
};

/// Constructive minus destructive counts.
struct DifferenceImage {
    GridSpec grid;
    std::vector<std::int64_t> values;
};

struct SnrReport {
    double mean_in = 0.0;
    double mean_out = 0.0;
    double sigma = 0.0;
    double snr = 0.0;
};

/// Gaussian beam weights normalized to sum to one over the grid.
std::vector<double> beam_weights(const SceneConfig &scene);

/// Per-pixel probability, per generated pair, of a heralded count in `basis`:
/// beam(x) * eta * (1 +/- V(x) cos phi(x)) / 4, blurred by the imaging PSF when enabled.
std::vector<double> expected_rate_map(const FringeField &field, const SceneConfig &scene, Basis basis);

/// pairs * expected_rate_map + dark counts, the per-pixel mean of simulate_frame.
std::vector<double> expected_counts(const SceneConfig &scene, Basis basis, std::uint64_t pairs);

/// Seeded Monte Carlo acquisition. `workers` = 0 picks the hardware concurrency; the result is
/// bit-identical for every worker count.
DetectionFrame simulate_frame(const SceneConfig &scene, Basis basis, std::uint64_t pairs, std::uint64_t seed,
                              unsigned workers = 0);

DifferenceImage difference_image(const DetectionFrame &con, const DetectionFrame &des);

/// |mean_in - mean_out| / sqrt(s_in^2 + s_out^2) with per-region sample standard deviations.
SnrReport snr(const DifferenceImage &diff, const RegionSpec &region_in, const RegionSpec &region_out);

/// SNR the estimator converges to in expectation for a pair budget (Poisson pixel noise).
SnrReport expected_snr(const SceneConfig &scene, std::uint64_t pairs, const RegionSpec &region_in,
                       const RegionSpec &region_out);

struct Chi2Result {
    double statistic = 0.0;
    int dof = 0;
    double p_value = 1.0;
};

/// Pearson chi-squared of a frame against per-pixel expected counts. Pixels expecting at least
/// `min_expected` are cells of their own; the rest are pooled into one cell when it reaches the
/// same threshold. Counts in pixels whose pooled expectation is exactly zero give p = 0.
Chi2Result chi2_frame_test(const DetectionFrame &frame, const std::vector<double> &expected, double min_expected = 5.0);

}  // namespace franson

#endif
