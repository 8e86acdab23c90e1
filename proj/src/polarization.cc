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

#include "franson/polarization.h"

#include <algorithm>
#include <cmath>

#include "franson/errors.h"

namespace franson {

namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kTraceTol = 1e-12;
constexpr double kPsdTol = 1e-10;

}  // namespace

bool TwoPhotonState::is_valid(const Eigen::Matrix4cd &rho) {
    if (!rho.allFinite()) {
        return false;
    }
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol) {
        return false;
    }
    if (std::abs(rho.trace() - std::complex<double>(1.0, 0.0)) > kTraceTol) {
        return false;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(rho, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff() >= -kPsdTol;
}

TwoPhotonState::TwoPhotonState(const Eigen::Matrix4cd &rho) : rho_(rho) {
    if (!is_valid(rho)) {
        throw DomainError("density matrix must be Hermitian, unit trace and positive semidefinite");
    }
}

TwoPhotonState make_dephased_bell(const DephasedBellParams &params) {
    if (!std::isfinite(params.phi)) {
        throw DomainError("phi must be finite");
    }
    if (!(params.visibility >= 0.0 && params.visibility <= 1.0)) {
        throw DomainError("visibility must lie in [0, 1]");
    }
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    rho(kHH, kHH) = 0.5;
    rho(kVV, kVV) = 0.5;
    std::complex<double> coherence = 0.5 * params.visibility * std::polar(1.0, params.phi);
    rho(kVV, kHH) = coherence;
    rho(kHH, kVV) = std::conj(coherence);
    return TwoPhotonState(rho);
}

Eigen::Matrix2d hwp_jones(WaveplateSetting setting) {
    double c = std::cos(2.0 * setting.theta);
    double s = std::sin(2.0 * setting.theta);
    Eigen::Matrix2d m;
    m << c, s, s, -c;
    return m;
}

std::array<std::complex<double>, 4> postselect_amplitudes(double phi) {
    const std::complex<double> e = std::polar(1.0, phi);
    const double norm = 1.0 / (2.0 * std::sqrt(2.0));
    const std::complex<double> same = (1.0 + e) * norm;
    const std::complex<double> flip = (1.0 - e) * norm;
    return {same, flip, flip, same};
}

double coincidence_probability(const TwoPhotonState &state, WaveplateSetting signal, WaveplateSetting idler) {
    // The transmitted port projects on H after the plate; pulled back through the
    // involutory Jones matrix this is the analyzer vector cos2t|H> + sin2t|V>.
    Eigen::Vector2d ds(std::cos(2.0 * signal.theta), std::sin(2.0 * signal.theta));
    Eigen::Vector2d di(std::cos(2.0 * idler.theta), std::sin(2.0 * idler.theta));
    Eigen::Vector4cd d;
    d << ds(0) * di(0), ds(0) * di(1), ds(1) * di(0), ds(1) * di(1);
    double p = (d.adjoint() * state.rho() * d)(0, 0).real();
    return std::clamp(p, 0.0, 1.0);
}

}  // namespace franson
