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

#include "mimodist/hardware.hpp"
#include "mimodist/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mimodist
{
    NonlinearityModel NonlinearityModel::ideal()
    {
        return NonlinearityModel{};
    }

    NonlinearityModel NonlinearityModel::third_order(RVector a)
    {
        if (a.size() == 0)
            throw EmptyDimensionError("third_order: coefficient vector is empty");
        for (Eigen::Index m = 0; m < a.size(); ++m)
            if (!(a[m] >= 0.0) || !std::isfinite(a[m]))
                throw DomainError("third_order: coefficient a_" + std::to_string(m) + " must be >= 0");
        NonlinearityModel out;
        out.kind_ = Kind::ThirdOrder;
        out.a_ = std::move(a);
        return out;
    }

    NonlinearityModel NonlinearityModel::third_order(std::size_t M, double a)
    {
        return third_order(RVector::Constant(static_cast<Eigen::Index>(M), a));
    }

    NonlinearityModel NonlinearityModel::custom(Map g)
    {
        if (!g)
            throw ValidationError("custom: empty map");
        NonlinearityModel out;
        out.kind_ = Kind::Custom;
        out.map_ = std::move(g);
        return out;
    }

    cd NonlinearityModel::operator()(std::size_t antenna, cd u) const
    {
        switch (kind_)
        {
        case Kind::Ideal:
            return u;
        case Kind::ThirdOrder:
            return u - a_[static_cast<Eigen::Index>(antenna)] * std::norm(u) * u;
        case Kind::Custom:
            return map_(antenna, u);
        }
        return u;
    }

    double amplifier_gain_coeff(double alpha, double boff_db, double p, std::size_t K)
    {
        if (!(alpha >= 0.0))
            throw DomainError("alpha: expected >= 0");
        if (!(boff_db >= 0.0))
            throw DomainError("boff_db: expected >= 0 dB");
        if (!(p > 0.0))
            throw DomainError("p: expected > 0");
        if (K < 1)
            throw DomainError("K: expected >= 1");
        return alpha / (db_to_linear(boff_db) * p * static_cast<double>(K));
    }

    CVector apply_nonlinearity(const NonlinearityModel &model, const CVector &u)
    {
        if (model.kind() == NonlinearityModel::Kind::ThirdOrder && model.coefficients().size() != u.size())
            throw ShapeError("apply_nonlinearity: model has " + std::to_string(model.coefficients().size()) +
                             " antennas, input has " + std::to_string(u.size()));
        CVector z(u.size());
        for (Eigen::Index m = 0; m < u.size(); ++m)
            z[m] = model(static_cast<std::size_t>(m), u[m]);
        return z;
    }

    static void check_third_order_inputs(const RVector &a, const CMatrix &C_uu, const char *what)
    {
        if (C_uu.rows() != C_uu.cols())
            throw ShapeError(std::string(what) + ": C_uu must be square");
        if (a.size() != C_uu.rows())
            throw ShapeError(std::string(what) + ": coefficient count " + std::to_string(a.size()) +
                             " does not match antenna count " + std::to_string(C_uu.rows()));
    }

    CVector bussgang_gain_third_order(const RVector &a, const CMatrix &C_uu)
    {
        check_third_order_inputs(a, C_uu, "bussgang_gain_third_order");
        CVector d(a.size());
        for (Eigen::Index m = 0; m < a.size(); ++m)
            d[m] = 1.0 - 2.0 * a[m] * C_uu(m, m).real();
        return d;
    }

    CMatrix distortion_covariance_third_order(const RVector &a, const CMatrix &C_uu)
    {
        check_third_order_inputs(a, C_uu, "distortion_covariance_third_order");
        const Eigen::Index M = C_uu.rows();
        CMatrix C_eta(M, M);
        for (Eigen::Index j = 0; j < M; ++j)
        {
            C_eta(j, j) = 2.0 * a[j] * a[j] * std::pow(C_uu(j, j).real(), 3);
            for (Eigen::Index i = j + 1; i < M; ++i)
            {
                const cd rho = C_uu(i, j);
                C_eta(i, j) = 2.0 * a[i] * a[j] * std::norm(rho) * rho;
                C_eta(j, i) = std::conj(C_eta(i, j));
            }
        }
        return C_eta;
    }

    BussgangDecomposition bussgang_third_order(const RVector &a, const CMatrix &C_uu)
    {
        BussgangDecomposition out;
        out.gains = bussgang_gain_third_order(a, C_uu);
        out.C_eta = distortion_covariance_third_order(a, C_uu);
        out.mode = BussgangDecomposition::Mode::analytic;
        return out;
    }

    EmpiricalBussgang empirical_bussgang(const NonlinearityModel &model, const CMatrix &C_uu,
                                         std::size_t n_samples, RngStream &rng)
    {
        if (n_samples < min_empirical_samples)
            throw ValidationError("empirical_bussgang: n_samples must be >= " + std::to_string(min_empirical_samples));
        const CMatrix L = psd_sqrt(C_uu);
        const Eigen::Index M = C_uu.rows();
        if (model.kind() == NonlinearityModel::Kind::ThirdOrder && model.coefficients().size() != M)
            throw ShapeError("empirical_bussgang: model antenna count does not match C_uu");

        // Raw second moments, accumulated per block and then added in block order.
        CMatrix S_zz = CMatrix::Zero(M, M);
        CMatrix S_zu = CMatrix::Zero(M, M);
        CMatrix S_uu = CMatrix::Zero(M, M);
        RVector S_gu_abs2 = RVector::Zero(M);

        constexpr Eigen::Index block = 4096;
        CMatrix W(M, block);
        CMatrix U(M, block);
        CMatrix Z(M, block);
        for (std::size_t done = 0; done < n_samples;)
        {
            const auto n = static_cast<Eigen::Index>(std::min<std::size_t>(block, n_samples - done));
            for (Eigen::Index s = 0; s < n; ++s)
                for (Eigen::Index m = 0; m < M; ++m)
                    W(m, s) = rng.complex_gaussian();
            U.leftCols(n).noalias() = L * W.leftCols(n);
            for (Eigen::Index s = 0; s < n; ++s)
                for (Eigen::Index m = 0; m < M; ++m)
                {
                    Z(m, s) = model(static_cast<std::size_t>(m), U(m, s));
                    S_gu_abs2[m] += std::norm(Z(m, s) * std::conj(U(m, s)));
                }
            S_zz.noalias() += Z.leftCols(n) * Z.leftCols(n).adjoint();
            S_zu.noalias() += Z.leftCols(n) * U.leftCols(n).adjoint();
            S_uu.noalias() += U.leftCols(n) * U.leftCols(n).adjoint();
            done += static_cast<std::size_t>(n);
        }

        const double inv_n = 1.0 / static_cast<double>(n_samples);
        const CMatrix C_zz = S_zz * inv_n;
        const CMatrix C_zu = S_zu * inv_n;
        const CMatrix C_uu_hat = S_uu * inv_n;

        EmpiricalBussgang out;
        out.n_samples = n_samples;
        out.decomposition.mode = BussgangDecomposition::Mode::empirical;
        out.decomposition.gains = CVector::Zero(M);
        out.gain_std_error = RVector::Zero(M);
        for (Eigen::Index m = 0; m < M; ++m)
        {
            const double rho = C_uu(m, m).real();
            if (rho <= 0.0)
                continue;
            const cd mean = C_zu(m, m);
            out.decomposition.gains[m] = mean / rho;
            const double var = std::max(0.0, S_gu_abs2[m] * inv_n - std::norm(mean));
            out.gain_std_error[m] = std::sqrt(var * inv_n) / rho;
        }

        const auto D = out.decomposition.gains.asDiagonal();
        const auto Dh = out.decomposition.gains.conjugate().asDiagonal();
        // E{(z - Du)(z - Du)^H} from the raw moments.
        CMatrix C_eta = C_zz - D * C_zu.adjoint() - C_zu * Dh + D * C_uu_hat * Dh;
        out.decomposition.C_eta = 0.5 * (C_eta + C_eta.adjoint());
        out.cross_covariance = C_zu - D * C_uu_hat;
        return out;
    }

    double clip_probability(double a, double rho_mm)
    {
        if (!(a >= 0.0))
            throw DomainError("clip_probability: a must be >= 0");
        if (!(rho_mm > 0.0))
            throw DomainError("clip_probability: rho_mm must be > 0");
        if (a == 0.0)
            return 0.0;
        return std::exp(-1.0 / (3.0 * a * rho_mm));
    }
}
