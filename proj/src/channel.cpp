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

#include "mimodist/channel.hpp"
#include "mimodist/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace mimodist
{
    std::string_view to_string(CombinerKind kind)
    {
        switch (kind)
        {
        case CombinerKind::MR:
            return "MR";
        case CombinerKind::DA_MR:
            return "DA-MR";
        case CombinerKind::DA_MMSE:
            return "DA-MMSE";
        }
        return "?";
    }

    std::string_view to_string(DistortionMode mode)
    {
        return mode == DistortionMode::full ? "full" : "diagonal";
    }

    std::string_view to_string(DiagScope scope)
    {
        return scope == DiagScope::both ? "both" : "sinr_only";
    }

    static std::string normalize_token(std::string_view text)
    {
        std::string out;
        for (char c : text)
            out += (c == '_') ? '-' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        return out;
    }

    CombinerKind parse_combiner(std::string_view text)
    {
        const std::string t = normalize_token(text);
        if (t == "MR")
            return CombinerKind::MR;
        if (t == "DA-MR")
            return CombinerKind::DA_MR;
        if (t == "DA-MMSE")
            return CombinerKind::DA_MMSE;
        throw ValidationError("combiner: unknown value '" + std::string(text) + "', expected one of MR, DA-MR, DA-MMSE");
    }

    DistortionMode parse_distortion_mode(std::string_view text)
    {
        const std::string t = normalize_token(text);
        if (t == "FULL")
            return DistortionMode::full;
        if (t == "DIAGONAL" || t == "DIAG")
            return DistortionMode::diagonal;
        throw ValidationError("distortion_mode: unknown value '" + std::string(text) + "', expected full or diagonal");
    }

    DiagScope parse_diag_scope(std::string_view text)
    {
        const std::string t = normalize_token(text);
        if (t == "BOTH")
            return DiagScope::both;
        if (t == "SINR-ONLY")
            return DiagScope::sinr_only;
        throw ValidationError("diag_scope: unknown value '" + std::string(text) + "', expected both or sinr_only");
    }

    void ScenarioConfig::validate() const
    {
        auto fail = [](const std::string &key, const std::string &range)
        { throw ValidationError(key + ": value out of range, expected " + range); };

        if (M < 1)
            fail("M", ">= 1");
        if (K < 1)
            fail("K", ">= 1");
        if (!(p > 0.0) || !std::isfinite(p))
            fail("p", "> 0");
        if (!(sigma2 > 0.0) || !std::isfinite(sigma2))
            fail("sigma2", "> 0");
        if (!(alpha >= 0.0) || !std::isfinite(alpha))
            fail("alpha", ">= 0");
        if (!(boff_db >= 0.0) || !std::isfinite(boff_db))
            fail("boff_db", ">= 0 dB");
        if (!(kappa >= 0.0 && kappa <= 1.0))
            fail("kappa", "[0,1]");
        if (trials < 1)
            fail("trials", ">= 1");
        if (!ue_gains.empty())
        {
            if (ue_gains.size() != K)
                throw ValidationError("ue_gains: expected " + std::to_string(K) + " entries, got " +
                                      std::to_string(ue_gains.size()));
            for (double g : ue_gains)
                if (!(g > 0.0) || !std::isfinite(g))
                    fail("ue_gains", "all entries > 0");
        }
    }

    ChannelRealization make_realization(CMatrix H, double p)
    {
        ChannelRealization out;
        out.C_uu = p * H * H.adjoint();
        // Rounding in the product leaves a ~1e-16 anti-Hermitian part.
        out.C_uu = 0.5 * (out.C_uu + out.C_uu.adjoint()).eval();
        out.H = std::move(H);
        return out;
    }

    ChannelRealization sample_channel(const ScenarioConfig &cfg, RngStream &rng)
    {
        cfg.validate();
        const auto M = static_cast<Eigen::Index>(cfg.M);
        const auto K = static_cast<Eigen::Index>(cfg.K);
        CMatrix H(M, K);
        for (Eigen::Index k = 0; k < K; ++k)
        {
            const double scale = std::sqrt(cfg.ue_gain(static_cast<std::size_t>(k)));
            for (Eigen::Index m = 0; m < M; ++m)
                H(m, k) = scale * rng.complex_gaussian();
        }
        return make_realization(std::move(H), cfg.p);
    }
}
