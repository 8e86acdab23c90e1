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

#ifndef FRANSON_STATS_H
#define FRANSON_STATS_H

#include <span>
#include <vector>

namespace franson {

/// Upper tail of the chi-squared distribution.
double chi2_survival(double statistic, double dof);

/// Kolmogorov-Smirnov distance between a sample and U(0, 1).
double ks_uniform_statistic(std::vector<double> sample);

/// Least-squares fit of rate(phi) = offset * (1 + visibility * cos(phi - phase)).
struct FringeFit {
    double offset = 0.0;
    double visibility = 0.0;
    double phase = 0.0;
    double max_residual = 0.0;
};

FringeFit fit_fringe(std::span<const double> phases, std::span<const double> rates);

/// P(K <= k) for K ~ Binomial(n, p).
double binomial_cdf(long long n, double p, long long k);

}  // namespace franson

#endif
