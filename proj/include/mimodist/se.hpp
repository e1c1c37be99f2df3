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

#ifndef MIMODIST_SE_HPP
#define MIMODIST_SE_HPP

#include "mimodist/channel.hpp"
#include "mimodist/combining.hpp"
#include "mimodist/numerics.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace mimodist
{
    enum class SinrVariant
    {
        ideal_ue,   // BS impairments only
        impaired_ue // BS and UE impairments (kappa)
    };

    // Everything the SINR expressions need for one realization. `gains` is the
    // diagonal of D and `C_eta` whichever distortion covariance is in force.
    struct SinrInputs
    {
        const ChannelRealization &ch;
        const CVector &gains;
        const CMatrix &C_eta;
        double p;
        double sigma2;
    };

    // p |v^H D h_k|^2 / v^H (sum_{i!=k} p D h_i h_i^H D^H + C_eta + sigma2 I) v
    double sinr_ideal_ue(const CVector &v, const SinrInputs &in, std::size_t k);

    // Same SINR at the optimal combiner, p g_k^H Sigma_{-k}^{-1} g_k, evaluated
    // with its own Hermitian solve of the user-exclusive matrix.
    double sinr_optimal(const SinrInputs &in, std::size_t k);

    // kappa p |v^H D h_k|^2 over the ideal-UE denominator plus the UE
    // self-distortion p (1 - kappa) |v^H D h_k|^2.
    double sinr_impaired_ue(const CVector &v, const SinrInputs &in, double kappa, std::size_t k);

    struct SinrReport
    {
        std::vector<double> gamma;
        std::vector<double> se; // log2(1 + gamma)
        SinrVariant variant = SinrVariant::ideal_ue;
        DistortionMode mode = DistortionMode::full;

        // SINRs computed with the diagonal covariance approximate the bound.
        bool approximate() const { return mode == DistortionMode::diagonal; }
    };

    // Per-UE SINR and SE for a combiner set. kappa is ignored for ideal_ue.
    SinrReport evaluate_sinr(const CombinerSet &combiners, const SinrInputs &in, SinrVariant variant,
                             double kappa, DistortionMode mode);

    // One coherence block of the configured experiment: draws the channel,
    // builds D and C_eta for the third-order amplifier, applies the
    // diagonal approximation per cfg.distortion_mode / cfg.diag_scope, builds
    // the combiner and evaluates the impaired-UE SINR.
    SinrReport simulate_block(const ScenarioConfig &cfg, RngStream &rng);

    struct ErgodicResult
    {
        std::vector<double> per_ue_mean;
        std::vector<double> per_ue_std_error;
        double mean_se = 0.0; // averaged over UEs
        double mean_se_std_error = 0.0;
        std::vector<double> per_trial_se; // UE-averaged SE of each trial, trial order
        std::size_t trials = 0;
        std::uint64_t cell_index = 0;
        ScenarioConfig config;

        bool approximate() const { return config.distortion_mode == DistortionMode::diagonal; }
    };

    // Monte Carlo average of log2(1 + gamma') over cfg.trials independent
    // blocks. Trial t draws from RngStream(cfg.seed, cell_index).substream(t),
    // so configurations sharing seed and cell_index see the same channels.
    // Results are identical for any thread count.
    ErgodicResult ergodic_se(const ScenarioConfig &cfg, unsigned threads = 1, std::uint64_t cell_index = 0);
}

#endif
