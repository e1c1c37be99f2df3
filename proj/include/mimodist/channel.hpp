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

#ifndef MIMODIST_CHANNEL_HPP
#define MIMODIST_CHANNEL_HPP

#include "mimodist/numerics.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mimodist
{
    enum class CombinerKind
    {
        MR,
        DA_MR,
        DA_MMSE
    };

    // Which distortion covariance the receiver and the SINR use.
    enum class DistortionMode
    {
        full,
        diagonal
    };

    // Where the diagonal approximation is applied when mode == diagonal.
    enum class DiagScope
    {
        both,     // combiner construction and SINR evaluation
        sinr_only // combiner built from the full covariance
    };

    std::string_view to_string(CombinerKind kind);
    std::string_view to_string(DistortionMode mode);
    std::string_view to_string(DiagScope scope);

    // Accepts "MR", "DA-MR", "DA-MMSE" (case-insensitive, '_' allowed for '-').
    CombinerKind parse_combiner(std::string_view text);
    DistortionMode parse_distortion_mode(std::string_view text);
    DiagScope parse_diag_scope(std::string_view text);

    struct ScenarioConfig
    {
        std::size_t M = 200;   // BS antennas
        std::size_t K = 1;     // UEs
        double p = 1.0;        // per-UE transmit power
        double sigma2 = 1.0;   // noise power
        double alpha = 1.0 / 3.0;
        double boff_db = 7.0;
        double kappa = 0.99;
        CombinerKind combiner = CombinerKind::DA_MMSE;
        DistortionMode distortion_mode = DistortionMode::full;
        DiagScope diag_scope = DiagScope::both;
        std::size_t trials = 2000;
        std::uint64_t seed = 1;

        // Optional per-UE large-scale gains; empty means all ones.
        std::vector<double> ue_gains;

        // Throws ValidationError naming the offending field.
        void validate() const;

        double ue_gain(std::size_t k) const { return ue_gains.empty() ? 1.0 : ue_gains.at(k); }
    };

    struct ChannelRealization
    {
        CMatrix H;    // M x K, column k is h_k
        CMatrix C_uu; // p * H * H^H

        std::size_t antennas() const { return static_cast<std::size_t>(H.rows()); }
        std::size_t users() const { return static_cast<std::size_t>(H.cols()); }
    };

    // Builds a realization from a given H, computing C_uu = p H H^H with exact
    // Hermitian symmetry.
    ChannelRealization make_realization(CMatrix H, double p);

    // i.i.d. Rayleigh fading: h_k ~ CN(0, beta_k I_M), beta_k from cfg.ue_gains.
    ChannelRealization sample_channel(const ScenarioConfig &cfg, RngStream &rng);
}

#endif
