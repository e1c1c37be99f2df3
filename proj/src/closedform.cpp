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

#include "mimodist/closedform.hpp"
#include "mimodist/errors.hpp"

#include <cmath>

namespace mimodist::closedform
{
    namespace
    {
        void check_dims(std::size_t M, std::size_t K)
        {
            if (M < 1)
                throw DomainError("M: expected >= 1");
            if (K < 1)
                throw DomainError("K: expected >= 1");
        }

        double boff_linear(double boff_db)
        {
            if (!(boff_db >= 0.0))
                throw DomainError("boff_db: expected >= 0 dB");
            return db_to_linear(boff_db);
        }

        double prefactor(double alpha, double boff_db, double p)
        {
            if (!(alpha >= 0.0))
                throw DomainError("alpha: expected >= 0");
            const double b = boff_linear(boff_db);
            return 2.0 * alpha * alpha * p / (b * b);
        }
    }

    double lemma2_correlated(double alpha, double boff_db, double p, std::size_t M, std::size_t K)
    {
        check_dims(M, K);
        const double k = static_cast<double>(K);
        const double m = static_cast<double>(M);
        return prefactor(alpha, boff_db, p) * (k + 6.0 + 9.0 / k + 4.0 / (k * k) + 2.0 * m * (k + 1.0) / (k * k));
    }

    double lemma2_uncorrelated(double alpha, double boff_db, double p, std::size_t K)
    {
        check_dims(1, K);
        const double k = static_cast<double>(K);
        return prefactor(alpha, boff_db, p) * (k + 6.0 + 11.0 / k + 6.0 / (k * k));
    }

    double distortion_ratio(std::size_t M, std::size_t K)
    {
        check_dims(M, K);
        const double k = static_cast<double>(K);
        return 1.0 + 2.0 * (static_cast<double>(M) - 1.0) / ((k + 2.0) * (k + 3.0));
    }

    double ue_distortion_moment(double alpha, double boff_db, std::size_t M, std::size_t K)
    {
        check_dims(M, K);
        if (!(alpha >= 0.0))
            throw DomainError("alpha: expected >= 0");
        const double b = boff_linear(boff_db);
        const double k = static_cast<double>(K);
        const double m = static_cast<double>(M);
        return (m + 1.0) - 4.0 * alpha * (m * k + k + m + 3.0) / (b * k) +
               4.0 * alpha * alpha * (m * k * k + 8.0 * k + 11.0 + 2.0 * m * k + k * k + m) / (b * b * k * k);
    }

    double lna_signal_to_distortion(double alpha, double boff_db)
    {
        if (!(alpha >= 0.0))
            throw DomainError("alpha: expected >= 0");
        if (alpha == 0.0)
            return no_distortion_sdr;
        const double b = boff_linear(boff_db);
        const double gain = 1.0 - 2.0 * alpha / b;
        return b * b * gain * gain / (2.0 * alpha * alpha);
    }

    cd distortion_corr_coeff(cd xi_u)
    {
        // Allow rounding slack for coefficients computed from data.
        if (!(std::abs(xi_u) <= 1.0 + 1e-12))
            throw DomainError("distortion_corr_coeff: |xi_u| must be <= 1");
        return std::norm(xi_u) * xi_u;
    }

    ClosedFormReport evaluate(double alpha, double boff_db, double p, std::size_t M, std::size_t K)
    {
        ClosedFormReport r;
        r.corr_distortion = lemma2_correlated(alpha, boff_db, p, M, K);
        r.uncorr_distortion = lemma2_uncorrelated(alpha, boff_db, p, K);
        r.ratio = distortion_ratio(M, K);
        r.ue_moment = ue_distortion_moment(alpha, boff_db, M, K);
        r.lna_sdr = lna_signal_to_distortion(alpha, boff_db);
        return r;
    }
}
