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

#ifndef MIMODIST_HARDWARE_HPP
#define MIMODIST_HARDWARE_HPP

#include "mimodist/numerics.hpp"

#include <cstddef>
#include <functional>

namespace mimodist
{
    // Per-antenna memoryless receiver map g_m: C -> C.
    //
    // ThirdOrder is the AM-AM polynomial g_m(u) = u - a_m |u|^2 u, applied over
    // the whole input range (no explicit clipping above 1/sqrt(3 a_m)).
    class NonlinearityModel
    {
    public:
        enum class Kind
        {
            Ideal,
            ThirdOrder,
            Custom
        };

        // Must be deterministic and free of side effects.
        using Map = std::function<cd(std::size_t antenna, cd u)>;

        static NonlinearityModel ideal();
        static NonlinearityModel third_order(RVector a);
        static NonlinearityModel third_order(std::size_t M, double a);
        static NonlinearityModel custom(Map g);

        Kind kind() const noexcept { return kind_; }
        const RVector &coefficients() const noexcept { return a_; }

        cd operator()(std::size_t antenna, cd u) const;

    private:
        NonlinearityModel() = default;

        Kind kind_ = Kind::Ideal;
        RVector a_;
        Map map_;
    };

    // a = alpha / (b_off * p * K), b_off = 10^(boff_db/10). Same for every antenna.
    double amplifier_gain_coeff(double alpha, double boff_db, double p, std::size_t K);

    // z_m = g_m(u_m).
    CVector apply_nonlinearity(const NonlinearityModel &model, const CVector &u);

    struct BussgangDecomposition
    {
        enum class Mode
        {
            analytic,
            empirical
        };

        CVector gains; // diagonal of D
        CMatrix C_eta; // distortion covariance
        Mode mode = Mode::analytic;

        CMatrix D() const { return gains.asDiagonal(); }
    };

    // d_m = 1 - 2 a_m rho_mm.
    CVector bussgang_gain_third_order(const RVector &a, const CMatrix &C_uu);

    // [C_eta]_ij = 2 a_i a_j |rho_ij|^2 rho_ij, i.e. 2 A (C o C* o C) A.
    CMatrix distortion_covariance_third_order(const RVector &a, const CMatrix &C_uu);

    BussgangDecomposition bussgang_third_order(const RVector &a, const CMatrix &C_uu);

    struct EmpiricalBussgang
    {
        BussgangDecomposition decomposition;
        RVector gain_std_error;   // standard error of each d_m estimate
        CMatrix cross_covariance; // sample E{eta u^H}; zero in expectation
        std::size_t n_samples = 0;
    };

    // Monte Carlo Bussgang decomposition for any model. Draws u ~ CN(0, C_uu),
    // estimates d_m = E{g_m(u_m) u_m^*} / rho_mm (d_m = 0 when rho_mm = 0) and
    // C_eta as the sample covariance of the residual eta = g(u) - D u.
    EmpiricalBussgang empirical_bussgang(const NonlinearityModel &model, const CMatrix &C_uu,
                                         std::size_t n_samples, RngStream &rng);

    inline constexpr std::size_t min_empirical_samples = 1000;

    // P(|u| > 1/sqrt(3a)) for u ~ CN(0, rho_mm); 0 when a = 0.
    double clip_probability(double a, double rho_mm);
}

#endif
