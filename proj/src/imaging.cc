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

#include "franson/imaging.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include "franson/errors.h"
#include "franson/philox.h"
#include "franson/stats.h"

namespace franson {

namespace {

constexpr double kMaxDarkMean = 100.0;

// Probability that a photon born at pixel offset 0 lands `d` pixels away after rounding a
// N(0, sigma) displacement.
std::vector<double> psf_kernel(double sigma) {
    int half = static_cast<int>(std::ceil(6.0 * sigma));
    std::vector<double> kernel(2 * half + 1);
    for (int d = -half; d <= half; ++d) {
        double hi = 0.5 * std::erfc(-(d + 0.5) / (sigma * std::sqrt(2.0)));
        double lo = 0.5 * std::erfc(-(d - 0.5) / (sigma * std::sqrt(2.0)));
        kernel[d + half] = hi - lo;
    }
    return kernel;
}

std::vector<double> blur(const std::vector<double> &image, const GridSpec &grid, double sigma) {
    auto kernel = psf_kernel(sigma);
    int half = static_cast<int>(kernel.size() / 2);
    std::vector<double> rows(image.size(), 0.0);
    for (int y = 0; y < grid.height; ++y) {
        for (int x = 0; x < grid.width; ++x) {
            double v = image[grid.index(x, y)];
            if (v == 0.0) {
                continue;
            }
            for (int d = -half; d <= half; ++d) {
                int tx = x + d;
                if (tx >= 0 && tx < grid.width) {
                    rows[grid.index(tx, y)] += v * kernel[d + half];
                }
            }
        }
    }
    std::vector<double> out(image.size(), 0.0);
    for (int y = 0; y < grid.height; ++y) {
        for (int x = 0; x < grid.width; ++x) {
            double v = rows[grid.index(x, y)];
            if (v == 0.0) {
                continue;
            }
            for (int d = -half; d <= half; ++d) {
                int ty = y + d;
                if (ty >= 0 && ty < grid.height) {
                    out[grid.index(x, ty)] += v * kernel[d + half];
                }
            }
        }
    }
    return out;
}

// Heralding acceptance per pixel, before beam weighting.
std::vector<double> acceptance_map(const FringeField &field, double efficiency, Basis basis) {
    const double sign = basis == Basis::kConstructive ? 1.0 : -1.0;
    std::vector<double> q(field.grid.size());
    for (std::size_t p = 0; p < q.size(); ++p) {
        q[p] = efficiency * 0.25 * (1.0 + sign * field.visibility[p] * std::cos(field.phi_total[p]));
    }
    return q;
}

std::uint64_t poisson_by_inversion(double mean, double u) {
    std::uint64_t k = 0;
    double term = std::exp(-mean);
    double cdf = term;
    const double limit = mean + 40.0 * std::sqrt(mean) + 40.0;
    while (u > cdf && k < limit) {
        ++k;
        term *= mean / static_cast<double>(k);
        cdf += term;
    }
    return k;
}

StreamTag pair_stream(Basis basis) {
    return basis == Basis::kConstructive ? StreamTag::kConstructivePairs : StreamTag::kDestructivePairs;
}

StreamTag dark_stream(Basis basis) {
    return basis == Basis::kConstructive ? StreamTag::kConstructiveDark : StreamTag::kDestructiveDark;
}

double sample_variance(const std::vector<double> &values, double mean) {
    double ss = 0.0;
    for (double v : values) {
        ss += (v - mean) * (v - mean);
    }
    return ss / static_cast<double>(values.size() - 1);
}

void check_snr_regions(const GridSpec &grid, const RegionSpec &in, const RegionSpec &out) {
    in.validate(grid);
    out.validate(grid);
    if (in.pixel_count() < 2 || out.pixel_count() < 2) {
        throw DomainError("SNR regions need at least 2 pixels each");
    }
    if (in.intersects(out)) {
        throw DomainError("SNR regions must be disjoint");
    }
}

}  // namespace

std::string_view basis_name(Basis basis) {
    return basis == Basis::kConstructive ? "constructive" : "destructive";
}

WaveplateSetting signal_plate(Basis) {
    return kPlus225;
}

WaveplateSetting idler_plate(Basis basis) {
    return basis == Basis::kConstructive ? kPlus225 : kMinus225;
}

std::uint64_t DetectionFrame::total() const {
    return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

std::vector<double> beam_weights(const SceneConfig &scene) {
    const GridSpec &g = scene.grid;
    std::vector<double> w(g.size());
    const double r2 = scene.beam.radius * scene.beam.radius;
    for (int y = 0; y < g.height; ++y) {
        for (int x = 0; x < g.width; ++x) {
            double dx = x - scene.beam.center_x;
            double dy = y - scene.beam.center_y;
            w[g.index(x, y)] = std::exp(-2.0 * (dx * dx + dy * dy) / r2);
        }
    }
    double total = std::accumulate(w.begin(), w.end(), 0.0);
    if (!(total > 0.0)) {
        throw DomainError("beam profile has no weight on the grid");
    }
    for (double &v : w) {
        v /= total;
    }
    return w;
}

std::vector<double> expected_rate_map(const FringeField &field, const SceneConfig &scene, Basis basis) {
    if (!(field.grid == scene.grid) || field.phi_total.size() != scene.grid.size()) {
        throw DomainError("fringe field grid does not match the scene grid");
    }
    auto beam = beam_weights(scene);
    auto q = acceptance_map(field, scene.noise.heralding_efficiency, basis);
    for (std::size_t p = 0; p < q.size(); ++p) {
        q[p] *= beam[p];
    }
    if (scene.psf_sigma > 0.0) {
        q = blur(q, scene.grid, scene.psf_sigma);
    }
    return q;
}

std::vector<double> expected_counts(const SceneConfig &scene, Basis basis, std::uint64_t pairs) {
    auto rates = expected_rate_map(fringe_field(scene), scene, basis);
    for (double &r : rates) {
        r = r * static_cast<double>(pairs) + scene.noise.dark_counts;
    }
    return rates;
}

DetectionFrame simulate_frame(const SceneConfig &scene, Basis basis, std::uint64_t pairs, std::uint64_t seed,
                              unsigned workers) {
    FringeField field = fringe_field(scene);
    if (scene.noise.dark_counts > kMaxDarkMean) {
        throw DomainError("dark_counts above the supported per-pixel mean");
    }
    const GridSpec &g = scene.grid;
    const auto accept = acceptance_map(field, scene.noise.heralding_efficiency, basis);
    auto cdf = beam_weights(scene);
    std::partial_sum(cdf.begin(), cdf.end(), cdf.begin());
    cdf.back() = 1.0;
    const double sigma = scene.psf_sigma;
    const StreamTag stream = pair_stream(basis);

    if (workers == 0) {
        workers = std::max(1u, std::thread::hardware_concurrency());
    }
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, std::max<std::uint64_t>(pairs, 1)));

    auto run_chunk = [&](std::uint64_t begin, std::uint64_t end, std::vector<std::uint64_t> &counts) {
        for (std::uint64_t k = begin; k < end; ++k) {
            EventDraws d = draw_event(seed, stream, k);
            auto born = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), d.uniform[0]) - cdf.begin());
            born = std::min(born, cdf.size() - 1);
            if (!(d.uniform[1] < accept[born])) {
                continue;
            }
            if (sigma > 0.0) {
                auto jitter = d.normals();
                int x = static_cast<int>(born % g.width);
                int y = static_cast<int>(born / g.width);
                auto tx = static_cast<long>(std::lround(x + sigma * jitter[0]));
                auto ty = static_cast<long>(std::lround(y + sigma * jitter[1]));
                if (tx < 0 || ty < 0 || tx >= g.width || ty >= g.height) {
                    continue;
                }
                ++counts[g.index(static_cast<int>(tx), static_cast<int>(ty))];
            } else {
                ++counts[born];
            }
        }
    };

    std::vector<std::vector<std::uint64_t>> partial(workers, std::vector<std::uint64_t>(g.size(), 0));
    if (workers == 1) {
        run_chunk(0, pairs, partial[0]);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            std::uint64_t begin = pairs / workers * w + std::min<std::uint64_t>(w, pairs % workers);
            std::uint64_t end = begin + pairs / workers + (w < pairs % workers ? 1 : 0);
            threads.emplace_back(run_chunk, begin, end, std::ref(partial[w]));
        }
        for (auto &t : threads) {
            t.join();
        }
    }

    DetectionFrame frame{g, std::vector<std::uint64_t>(g.size(), 0), basis, pairs, seed};
    for (const auto &part : partial) {
        for (std::size_t p = 0; p < part.size(); ++p) {
            frame.counts[p] += part[p];
        }
    }
    if (scene.noise.dark_counts > 0.0) {
        const StreamTag dark = dark_stream(basis);
        for (std::size_t p = 0; p < g.size(); ++p) {
            frame.counts[p] += poisson_by_inversion(scene.noise.dark_counts, draw_event(seed, dark, p).uniform[0]);
        }
    }
    return frame;
}

DifferenceImage difference_image(const DetectionFrame &con, const DetectionFrame &des) {
    if (!(con.grid == des.grid) || con.counts.size() != des.counts.size()) {
        throw DomainError("difference image needs frames on the same grid");
    }
    if (con.basis != Basis::kConstructive || des.basis != Basis::kDestructive) {
        throw DomainError("difference image needs a constructive and a destructive frame");
    }
    DifferenceImage diff{con.grid, std::vector<std::int64_t>(con.counts.size())};
    for (std::size_t p = 0; p < diff.values.size(); ++p) {
        diff.values[p] = static_cast<std::int64_t>(con.counts[p]) - static_cast<std::int64_t>(des.counts[p]);
    }
    return diff;
}

SnrReport snr(const DifferenceImage &diff, const RegionSpec &region_in, const RegionSpec &region_out) {
    check_snr_regions(diff.grid, region_in, region_out);
    auto collect = [&](const RegionSpec &r) {
        std::vector<double> v;
        v.reserve(r.pixel_count());
        for (int y = r.y0; y <= r.y1; ++y) {
            for (int x = r.x0; x <= r.x1; ++x) {
                v.push_back(static_cast<double>(diff.values[diff.grid.index(x, y)]));
            }
        }
        return v;
    };
    auto in = collect(region_in);
    auto out = collect(region_out);
    SnrReport report;
    report.mean_in = std::accumulate(in.begin(), in.end(), 0.0) / static_cast<double>(in.size());
    report.mean_out = std::accumulate(out.begin(), out.end(), 0.0) / static_cast<double>(out.size());
    report.sigma = std::sqrt(sample_variance(in, report.mean_in) + sample_variance(out, report.mean_out));
    if (!(report.sigma > 0.0)) {
        throw DomainError("SNR undefined: both regions have zero variance");
    }
    report.snr = std::abs(report.mean_in - report.mean_out) / report.sigma;
    return report;
}

SnrReport expected_snr(const SceneConfig &scene, std::uint64_t pairs, const RegionSpec &region_in,
                       const RegionSpec &region_out) {
    check_snr_regions(scene.grid, region_in, region_out);
    auto con = expected_counts(scene, Basis::kConstructive, pairs);
    auto des = expected_counts(scene, Basis::kDestructive, pairs);
    auto moments = [&](const RegionSpec &r, double &mean, double &expected_var) {
        std::vector<double> m;
        double noise = 0.0;
        for (int y = r.y0; y <= r.y1; ++y) {
            for (int x = r.x0; x <= r.x1; ++x) {
                std::size_t p = scene.grid.index(x, y);
                m.push_back(con[p] - des[p]);
                noise += con[p] + des[p];
            }
        }
        mean = std::accumulate(m.begin(), m.end(), 0.0) / static_cast<double>(m.size());
        expected_var = noise / static_cast<double>(m.size()) + sample_variance(m, mean);
    };
    SnrReport report;
    double var_in = 0.0;
    double var_out = 0.0;
    moments(region_in, report.mean_in, var_in);
    moments(region_out, report.mean_out, var_out);
    report.sigma = std::sqrt(var_in + var_out);
    if (!(report.sigma > 0.0)) {
        throw DomainError("expected SNR undefined: zero variance");
    }
    report.snr = std::abs(report.mean_in - report.mean_out) / report.sigma;
    return report;
}

Chi2Result chi2_frame_test(const DetectionFrame &frame, const std::vector<double> &expected, double min_expected) {
    if (expected.size() != frame.counts.size()) {
        throw DomainError("expectation does not match the frame grid");
    }
    Chi2Result result;
    double pooled_expected = 0.0;
    double pooled_observed = 0.0;
    for (std::size_t p = 0; p < expected.size(); ++p) {
        double observed = static_cast<double>(frame.counts[p]);
        if (expected[p] >= min_expected) {
            double d = observed - expected[p];
            result.statistic += d * d / expected[p];
            ++result.dof;
        } else {
            pooled_expected += expected[p];
            pooled_observed += observed;
        }
    }
    // Sparse pixels form one extra cell.
    if (pooled_expected >= min_expected) {
        double d = pooled_observed - pooled_expected;
        result.statistic += d * d / pooled_expected;
        ++result.dof;
    } else if (pooled_expected == 0.0 && pooled_observed > 0.0) {
        result.statistic = std::numeric_limits<double>::infinity();
        result.dof = std::max(result.dof, 1);
        result.p_value = 0.0;
        return result;
    }
    if (result.dof == 0) {
        throw DomainError("no pixel reaches the minimum expected count");
    }
    result.p_value = chi2_survival(result.statistic, result.dof);
    return result;
}

}  // namespace franson
