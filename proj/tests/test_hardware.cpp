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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mimodist/channel.hpp"
#include "mimodist/closedform.hpp"
#include "mimodist/errors.hpp"
#include "mimodist/hardware.hpp"

#include <cmath>

using namespace mimodist;

namespace
{
    ChannelRealization random_channel(std::size_t M, std::size_t K, double p, std::uint64_t seed)
    {
        ScenarioConfig cfg;
        cfg.M = M;
        cfg.K = K;
        cfg.p = p;
        RngStream rng(seed, 0);
        return sample_channel(cfg, rng);
    }
}

TEST_CASE("amplifier coefficient")
{
    CHECK(amplifier_gain_coeff(0.0, 7.0, 1.0, 5) == 0.0);
    CHECK(amplifier_gain_coeff(1.0 / 3.0, 0.0, 1.0, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    // (1/3) / (10^0.7 * 5)
    CHECK(amplifier_gain_coeff(1.0 / 3.0, 7.0, 1.0, 5) == doctest::Approx(0.013301748766459199).epsilon(1e-12));
    CHECK_THROWS_AS(amplifier_gain_coeff(-1.0, 7.0, 1.0, 5), DomainError);
    CHECK_THROWS_AS(amplifier_gain_coeff(0.1, 7.0, 1.0, 0), DomainError);
}

TEST_CASE("apply_nonlinearity")
{
    CVector u(3);
    u << cd(1.0, 0.0), cd(0.2, -0.7), cd(-2.0, 1.0);
    CHECK((apply_nonlinearity(NonlinearityModel::ideal(), u) - u).norm() == 0.0);

    const NonlinearityModel g = NonlinearityModel::third_order(3, 1.0 / 3.0);
    const CVector z = apply_nonlinearity(g, u);
    CHECK(std::abs(z[0] - cd(2.0 / 3.0, 0.0)) < 1e-15);
    // Phase is preserved (AM-AM only).
    CHECK(std::arg(z[1]) == doctest::Approx(std::arg(u[1])));

    // |g(r)| non-decreasing on [0, 1/sqrt(3a)] = [0, 1] for a = 1/3.
    const NonlinearityModel g1 = NonlinearityModel::third_order(1, 1.0 / 3.0);
    double prev = 0.0;
    for (int i = 0; i <= 1000; ++i)
    {
        const double r = i / 1000.0;
        const double out = std::abs(g1(0, cd(r, 0.0)));
        CHECK(out >= prev - 1e-15);
        prev = out;
    }
    // Beyond the boundary the output amplitude decreases.
    CHECK(std::abs(g1(0, cd(1.1, 0.0))) < std::abs(g1(0, cd(1.0, 0.0))));

    CHECK_THROWS_AS(apply_nonlinearity(g, CVector::Zero(2)), ShapeError);
    CHECK_THROWS_AS(NonlinearityModel::third_order(2, -0.1), DomainError);
}

TEST_CASE("third-order Bussgang gain")
{
    const ChannelRealization ch = random_channel(6, 2, 1.0, 1);
    const CVector d0 = bussgang_gain_third_order(RVector::Zero(6), ch.C_uu);
    CHECK((d0 - CVector::Ones(6)).norm() == 0.0);

    CMatrix C = CMatrix::Identity(1, 1) * 5.0;
    const CVector d = bussgang_gain_third_order(RVector::Constant(1, 0.013302), C);
    CHECK(d[0].real() == doctest::Approx(0.86698).epsilon(1e-6));

    const CVector dr = bussgang_gain_third_order(RVector::Constant(6, 0.05), ch.C_uu);
    CHECK(dr.imag().norm() == 0.0);
}

TEST_CASE("third-order distortion covariance")
{
    const ChannelRealization ch = random_channel(8, 2, 1.0, 2);
    CHECK(distortion_covariance_third_order(RVector::Zero(8), ch.C_uu).norm() == 0.0);

    SUBCASE("diagonal input covariance gives diagonal distortion")
    {
        CMatrix C = CMatrix::Zero(3, 3);
        C.diagonal() << 1.0, 2.0, 3.0;
        const CMatrix E = distortion_covariance_third_order(RVector::Constant(3, 0.1), C);
        CHECK((E - diag_of(E)).norm() == 0.0);
        CHECK(E(2, 2).real() == doctest::Approx(2.0 * 0.01 * 27.0));
    }

    SUBCASE("Hadamard matrix form 2A(C o C* o C)A")
    {
        RVector a(8);
        a << 0.01, 0.02, 0.03, 0.0, 0.05, 0.01, 0.02, 0.04;
        const CMatrix E = distortion_covariance_third_order(a, ch.C_uu);
        const CMatrix had = ch.C_uu.cwiseProduct(ch.C_uu.conjugate()).cwiseProduct(ch.C_uu);
        const CMatrix expected = 2.0 * a.asDiagonal() * had * a.asDiagonal();
        CHECK((E - expected).norm() / expected.norm() < 1e-14);
    }
}

TEST_CASE("cube law and PSD on randomized instances")
{
    for (std::uint64_t seed = 0; seed < 100; ++seed)
    {
        const std::size_t M = 2 + seed % 9;
        const std::size_t K = 1 + seed % 4;
        const ChannelRealization ch = random_channel(M, K, 1.0 + 0.1 * static_cast<double>(seed % 3), 1000 + seed);
        RVector a(static_cast<Eigen::Index>(M));
        for (Eigen::Index m = 0; m < a.size(); ++m)
            a[m] = 0.01 * static_cast<double>(1 + (m + seed) % 5);
        const CMatrix E = distortion_covariance_third_order(a, ch.C_uu);
        const RVector ev = hermitian_eigenvalues(E);
        CHECK(ev.minCoeff() >= -1e-10 * ev.maxCoeff());
        for (Eigen::Index i = 0; i < E.rows(); ++i)
            for (Eigen::Index j = 0; j < E.cols(); ++j)
            {
                if (i == j)
                    continue;
                const cd xi_u = ch.C_uu(i, j) / std::sqrt(ch.C_uu(i, i).real() * ch.C_uu(j, j).real());
                const cd xi_eta = E(i, j) / std::sqrt(E(i, i).real() * E(j, j).real());
                CHECK(std::abs(xi_eta - closedform::distortion_corr_coeff(xi_u)) < 1e-12);
                CHECK(std::abs(xi_eta) <= std::abs(xi_u) + 1e-15);
            }
    }
}

TEST_CASE("empirical Bussgang for the ideal model")
{
    const ChannelRealization ch = random_channel(4, 2, 1.0, 3);
    RngStream rng(3, 1);
    const std::size_t n = 100'000;
    const EmpiricalBussgang e = empirical_bussgang(NonlinearityModel::ideal(), ch.C_uu, n, rng);
    const double tol = 5.0 / std::sqrt(static_cast<double>(n));
    CHECK((e.decomposition.gains - CVector::Ones(4)).cwiseAbs().maxCoeff() <= tol);
    CHECK(e.decomposition.C_eta.norm() / ch.C_uu.norm() <= tol);
    CHECK(e.decomposition.mode == BussgangDecomposition::Mode::empirical);
}

TEST_CASE("empirical Bussgang matches the third-order formulas")
{
    const ChannelRealization ch = random_channel(8, 2, 1.0, 4);
    const double a = amplifier_gain_coeff(1.0 / 3.0, 0.0, 1.0, 2);
    const RVector coeffs = RVector::Constant(8, a);
    const BussgangDecomposition analytic = bussgang_third_order(coeffs, ch.C_uu);

    RngStream rng(4, 1);
    const std::size_t n = 200'000;
    const EmpiricalBussgang e = empirical_bussgang(NonlinearityModel::third_order(coeffs), ch.C_uu, n, rng);
    for (Eigen::Index m = 0; m < 8; ++m)
        CHECK(std::abs(e.decomposition.gains[m] - analytic.gains[m]) <= 3.0 * e.gain_std_error[m] + 1e-12);
    CHECK((e.decomposition.C_eta - analytic.C_eta).norm() / analytic.C_eta.norm() < 0.05);
    CHECK(e.cross_covariance.norm() / ch.C_uu.norm() <= 5.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("empirical Bussgang with a custom map and unequal coefficients")
{
    // Soft limiter with unit saturation; a smooth alternative to the polynomial.
    const auto limiter = NonlinearityModel::custom([](std::size_t, cd u) { return u / std::sqrt(1.0 + std::norm(u)); });
    const ChannelRealization ch = random_channel(3, 1, 1.0, 5);
    RngStream rng(5, 1);
    const EmpiricalBussgang e = empirical_bussgang(limiter, ch.C_uu, 50'000, rng);
    for (Eigen::Index m = 0; m < 3; ++m)
    {
        CHECK(e.decomposition.gains[m].real() < 1.0);
        CHECK(e.decomposition.gains[m].real() > 0.0);
    }
    const RVector ev = hermitian_eigenvalues(e.decomposition.C_eta);
    CHECK(ev.minCoeff() >= -1e-10 * ev.maxCoeff());

    // d_i != d_j branch of the analytic formulas.
    RVector coeffs(3);
    coeffs << 0.0, 0.05, 0.2;
    const BussgangDecomposition analytic = bussgang_third_order(coeffs, ch.C_uu);
    RngStream rng2(5, 2);
    const EmpiricalBussgang e2 = empirical_bussgang(NonlinearityModel::third_order(coeffs), ch.C_uu, 200'000, rng2);
    for (Eigen::Index m = 0; m < 3; ++m)
        CHECK(std::abs(e2.decomposition.gains[m] - analytic.gains[m]) <= 3.0 * e2.gain_std_error[m] + 1e-12);
    CHECK((e2.decomposition.C_eta - analytic.C_eta).norm() / analytic.C_eta.norm() < 0.05);
}

TEST_CASE("empirical Bussgang handles a silent antenna and small sample counts")
{
    CMatrix C = CMatrix::Zero(2, 2);
    C(0, 0) = 1.0;
    RngStream rng(6, 0);
    const EmpiricalBussgang e = empirical_bussgang(NonlinearityModel::third_order(2, 0.1), C, 2000, rng);
    CHECK(e.decomposition.gains[1] == cd(0.0, 0.0));
    CHECK_THROWS_AS(empirical_bussgang(NonlinearityModel::ideal(), C, 999, rng), ValidationError);
}

TEST_CASE("clip probability")
{
    CHECK(clip_probability(0.0, 5.0) == 0.0);
    CHECK(clip_probability(1.0 / 3.0, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(clip_probability(0.013302, 5.0) == doctest::Approx(0.006659055125503967).epsilon(1e-12));

    // Sampling cross-check: |u|^2 ~ Exp(1/rho).
    RngStream rng(7, 0);
    const double a = 0.013302, rho = 5.0;
    const double threshold2 = 1.0 / (3.0 * a);
    std::size_t hits = 0;
    const std::size_t n = 1'000'000;
    for (std::size_t i = 0; i < n; ++i)
        if (rho * std::norm(rng.complex_gaussian()) > threshold2)
            ++hits;
    const double pr = clip_probability(a, rho);
    const double se = std::sqrt(pr * (1.0 - pr) / static_cast<double>(n));
    CHECK(std::abs(static_cast<double>(hits) / static_cast<double>(n) - pr) <= 4.0 * se);
    CHECK_THROWS_AS(clip_probability(0.1, 0.0), DomainError);
}
