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

#ifndef MIMODIST_COMBINING_HPP
#define MIMODIST_COMBINING_HPP

#include "mimodist/channel.hpp"
#include "mimodist/numerics.hpp"

namespace mimodist
{
    struct CombinerSet
    {
        CMatrix V; // M x K, column k combines UE k
        CombinerKind kind = CombinerKind::MR;
        DistortionMode mode = DistortionMode::full;
    };

    // v_k = h_k / sqrt(M), since E{||h_k||^2} = M under unit-variance Rayleigh fading.
    CombinerSet mr_combiner(const ChannelRealization &ch);

    // v_k = D h_k / ||D h_k||. Throws DegenerateCombinerError if D h_k = 0.
    CombinerSet da_mr_combiner(const ChannelRealization &ch, const CVector &gains);

    // v_k = p (sum_{i != k} p D h_i h_i^H D^H + C_eta + sigma2 I)^{-1} D h_k.
    //
    // One Cholesky factorization of the all-user matrix serves every k: with
    // g_k = D h_k and x_k = Sigma^{-1} g_k, removing user k is a rank-one
    // downdate, so the exclusive inverse applied to g_k equals
    // x_k / (1 - p g_k^H x_k).
    //
    // `mode` only tags the result; pass C_eta or diag_of(C_eta) accordingly.
    CombinerSet da_mmse_combiner(const ChannelRealization &ch, const CVector &gains, const CMatrix &C_eta,
                                 double p, double sigma2, DistortionMode mode = DistortionMode::full);

    // Effective channels D H.
    CMatrix effective_channels(const ChannelRealization &ch, const CVector &gains);
}

#endif
