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

#include "franson/stats.h"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <Eigen/Dense>

#include "franson/errors.h"

namespace franson {

double chi2_survival(double statistic, double dof) {
    if (!(dof > 0.0)) {
        throw DomainError("chi-squared needs positive degrees of freedom");
    }
    if (statistic <= 0.0) {
        return 1.0;
    }
    return boost::math::gamma_q(dof / 2.0, statistic / 2.0);
}

double ks_uniform_statistic(std::vector<double> sample) {
    if (sample.empty()) {
        throw DomainError("KS statistic of an empty sample");
    }
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        double u = std::clamp(sample[i], 0.0, 1.0);
        d = std::max({d, (i + 1) / n - u, u - i / n});
    }
    return d;
}

FringeFit fit_fringe(std::span<const double> phases, std::span<const double> rates) {
    if (phases.size() != rates.size() || phases.size() < 3) {
        throw DomainError("fringe fit needs at least 3 matching samples");
    }
    const auto n = static_cast<Eigen::Index>(phases.size());
    Eigen::MatrixXd design(n, 3);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        design(i, 0) = 1.0;
        design(i, 1) = std::cos(phases[i]);
        design(i, 2) = std::sin(phases[i]);
        y(i) = rates[i];
    }
    Eigen::Vector3d coef = design.colPivHouseholderQr().solve(y);
    FringeFit fit;
    fit.offset = coef(0);
    double amplitude = std::hypot(coef(1), coef(2));
    fit.visibility = fit.offset != 0.0 ? amplitude / fit.offset : 0.0;
    fit.phase = std::atan2(coef(2), coef(1));
    fit.max_residual = (design * coef - y).cwiseAbs().maxCoeff();
    return fit;
}

double binomial_cdf(long long n, double p, long long k) {
    if (k < 0) {
        return 0.0;
    }
    if (k >= n) {
        return 1.0;
    }
    if (p <= 0.0) {
        return 1.0;
    }
    if (p >= 1.0) {
        return 0.0;
    }
    boost::math::binomial_distribution<double> dist(static_cast<double>(n), p);
    return boost::math::cdf(dist, static_cast<double>(k));
}

}  // namespace franson
