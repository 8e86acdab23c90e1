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

#ifndef FRANSON_POLARIZATION_H
#define FRANSON_POLARIZATION_H

#include <array>
#include <complex>

#include <Eigen/Dense>

namespace franson {

/// Two-photon polarization basis index, rows/columns of the density matrix.
enum BasisIndex : int { kHH = 0, kHV = 1, kVH = 2, kVV = 3 };

/// Density matrix of a signal/idler polarization pair in the (HH, HV, VH, VV) basis.
///
/// Construction validates Hermiticity, unit trace and positive semidefiniteness.
class TwoPhotonState {
   public:
    explicit TwoPhotonState(const Eigen::Matrix4cd &rho);

    const Eigen::Matrix4cd &rho() const {
        return rho_;
    }

    /// Checks the three density-matrix invariants without throwing.
    static bool is_valid(const Eigen::Matrix4cd &rho);

   private:
    Eigen::Matrix4cd rho_;
};

/// Total two-photon phase and the coherence-derived visibility multiplying the HH/VV coherences.
struct DephasedBellParams {
    double phi = 0.0;
    double visibility = 1.0;
};

/// Half-wave-plate fast-axis angle, radians.
struct WaveplateSetting {
    double theta = 0.0;
};

/// (|HH> + e^{i phi}|VV>)/sqrt(2) with off-diagonals scaled by the visibility.
TwoPhotonState make_dephased_bell(const DephasedBellParams &params);

/// Real Jones matrix [[cos 2t, sin 2t], [sin 2t, -cos 2t]].
Eigen::Matrix2d hwp_jones(WaveplateSetting setting);

/// Coefficients of the pure state on (HH, HV, VH, VV) after both plates at 22.5 degrees.
std::array<std::complex<double>, 4> postselect_amplitudes(double phi);

/// Probability that both photons leave the transmitted PBS port after their waveplates.
double coincidence_probability(const TwoPhotonState &state, WaveplateSetting signal, WaveplateSetting idler);

constexpr double kPi = 3.14159265358979323846;
constexpr double kQuarterWave = kPi / 8.0;  // 22.5 degrees

inline constexpr WaveplateSetting kPlus225{kQuarterWave};
inline constexpr WaveplateSetting kMinus225{-kQuarterWave};

}  // namespace franson

#endif
