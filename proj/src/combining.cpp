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

#include "mimodist/combining.hpp"
#include "mimodist/errors.hpp"

#include <cmath>
#include <string>

namespace mimodist
{
    CMatrix effective_channels(const ChannelRealization &ch, const CVector &gains)
    {
        if (gains.size() != ch.H.rows())
            throw ShapeError("effective_channels: gain count " + std::to_string(gains.size()) +
                             " does not match antenna count " + std::to_string(ch.H.rows()));
        return gains.asDiagonal() * ch.H;
    }

    CombinerSet mr_combiner(const ChannelRealization &ch)
    {
        CombinerSet out;
        out.kind = CombinerKind::MR;
        out.V = ch.H / std::sqrt(static_cast<double>(ch.H.rows()));
        return out;
    }

    CombinerSet da_mr_combiner(const ChannelRealization &ch, const CVector &gains)
    {
        CombinerSet out;
        out.kind = CombinerKind::DA_MR;
        out.V = effective_channels(ch, gains);
        for (Eigen::Index k = 0; k < out.V.cols(); ++k)
        {
            const double norm = out.V.col(k).norm();
            if (!(norm > 0.0))
                throw DegenerateCombinerError(static_cast<std::size_t>(k));
            out.V.col(k) /= norm;
        }
        return out;
    }

    CombinerSet da_mmse_combiner(const ChannelRealization &ch, const CVector &gains, const CMatrix &C_eta,
                                 double p, double sigma2, DistortionMode mode)
    {
        const Eigen::Index M = ch.H.rows();
        if (C_eta.rows() != M || C_eta.cols() != M)
            throw ShapeError("da_mmse_combiner: C_eta must be " + std::to_string(M) + "x" + std::to_string(M));
        if (!(sigma2 > 0.0))
            throw DomainError("da_mmse_combiner: sigma2 must be > 0");

        const CMatrix G = effective_channels(ch, gains);
        CMatrix Sigma = p * G * G.adjoint() + C_eta;
        Sigma.diagonal().array() += sigma2;
        Sigma = 0.5 * (Sigma + Sigma.adjoint()).eval();

        const CMatrix X = hpd_solve(Sigma, G);

        CombinerSet out;
        out.kind = CombinerKind::DA_MMSE;
        out.mode = mode;
        out.V.resize(M, G.cols());
        for (Eigen::Index k = 0; k < G.cols(); ++k)
        {
            const double quad = (G.col(k).adjoint() * X.col(k))(0).real();
            const double downdate = 1.0 - p * quad;
            if (!(downdate > 0.0))
                throw NumericalError("da_mmse_combiner: rank-one downdate lost positivity for UE " +
                                     std::to_string(k));
            out.V.col(k) = (p / downdate) * X.col(k);
        }
        return out;
    }
}
