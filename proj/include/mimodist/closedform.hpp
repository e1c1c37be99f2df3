// SPDX-License-Identifier: Apache-2.0
//
// mimodist: receiver distortion correlation in multi-antenna uplink simulation
// Copyright (C) 2026 The mimodist Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef MIMODIST_CLOSEDFORM_HPP
#define MIMODIST_CLOSEDFORM_HPP

#include "mimodist/numerics.hpp"

#include <cstddef>
#include <limits>

// Closed-form moments for the third-order amplifier under i.i.d. Rayleigh
// fading with a = alpha / (b_off p K). b_off is given in dB and converted to
// linear scale here; everything else is linear.
namespace mimodist::closedform
{
    // E{h^H C_eta h} / E{||h||^2} with the full distortion covariance:
    // (2 alpha^2 p / b_off^2) (K + 6 + 9/K + 4/K^2 + 2M(K+1)/K^2).
    double lemma2_correlated(double alpha, double boff_db, double p, std::size_t M, std::size_t K);

    // Same with the diagonal covariance: (2 alpha^2 p / b_off^2) (K + 6 + 11/K + 6/K^2).
    double lemma2_uncorrelated(double alpha, double boff_db, double p, std::size_t K);

    // Ratio of the two above: 1 + 2(M-1) / ((K+2)(K+3)).
    double distortion_ratio(std::size_t M, std::size_t K);

    // E{|h^H D h|^2} / E{||h||^2} with D from the third-order amplifier.
    double ue_distortion_moment(double alpha, double boff_db, std::size_t M, std::size_t K);

    // Per-antenna LNA signal-to-distortion ratio [D C_uu D^H]_ii / [C_eta]_ii at
    // the average operating point rho_ii = pK: b_off^2 (1 - 2 alpha/b_off)^2 / (2 alpha^2).
    // Returns +infinity when alpha = 0 (no distortion).
    double lna_signal_to_distortion(double alpha, double boff_db);

    inline constexpr double no_distortion_sdr = std::numeric_limits<double>::infinity();

    // Distortion correlation coefficient |xi_u|^2 xi_u. Throws DomainError if |xi_u| > 1.
    cd distortion_corr_coeff(cd xi_u);

    struct ClosedFormReport
    {
        double corr_distortion = 0.0;
        double uncorr_distortion = 0.0;
        double ratio = 1.0;
        double ue_moment = 0.0;
        double lna_sdr = no_distortion_sdr;
    };

    ClosedFormReport evaluate(double alpha, double boff_db, double p, std::size_t M, std::size_t K);
}

#endif
