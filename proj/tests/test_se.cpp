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

#include "mimodist/errors.hpp"
#include "mimodist/hardware.hpp"
#include "mimodist/se.hpp"

#include <cmath>

using namespace mimodist;

namespace
{
    struct Setup
    {
        ChannelRealization ch;
        CVector gains;
        CMatrix C_eta;
    };

    Setup make_setup(std::size_t M, std::size_t K, double alpha, std::uint64_t seed, double p = 1.0)
    {
        ScenarioConfig cfg;
        cfg.M = M;
        cfg.K = K;
        cfg.p = p;
        RngStream rng(seed, 0);
        Setup s{sample_channel(cfg, rng), {}, {}};
        const RVector a = RVector::Constant(static_cast<Eigen::Index>(M), amplifier_gain_coeff(alpha, 7.0, p, K));
        s.gains = bussgang_gain_third_order(a, s.ch.C_uu);
        s.C_eta = distortion_covariance_third_order(a, s.ch.C_uu);
        return s;
    }

    // E{f(x)} for x ~ Exp(1) by composite Simpson on [0, 60].
    template <typename F>
    double exp_expectation(F f)
    {
        const int n = 600'000;
        const double hi = 60.0, h = hi / n;
        double s = f(0.0) + f(hi) * std::exp(-hi);
        for (int i = 1; i < n; ++i)
        {
            const double x = i * h;
            s += (i % 2 ? 4.0 : 2.0) * f(x) * std::exp(-x);
        }
        return s * h / 3.0;
    }
}

TEST_CASE("matched filter SNR for one user without distortion")
{
    const Setup s = make_setup(8, 1, 0.0, 1, 2.0);
    const SinrInputs in{s.ch, s.gains, s.C_eta, 2.0, 0.5};
    const CVector h = s.ch.H.col(0);
    CHECK(sinr_ideal_ue(h, in, 0) == doctest::Approx(2.0 * h.squaredNorm() / 0.5).epsilon(1e-13));
    CHECK(sinr_optimal(in, 0) == doctest::Approx(2.0 * h.squaredNorm() / 0.5).epsilon(1e-12));
}

TEST_CASE("scalar optimal SINR")
{
    const Setup s = make_setup(1, 1, 1.0 / 3.0, 2);
    const SinrInputs in{s.ch, s.gains, s.C_eta, 1.0, 1.0};
    const double d = s.gains[0].real();
    const double x = std::norm(s.ch.H(0, 0));
    const double a = amplifier_gain_coeff(1.0 / 3.0, 7.0, 1.0, 1);
    const double expected = d * d * x / (2.0 * a * a * x * x * x + 1.0);
    CHECK(sinr_optimal(in, 0) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("SINR at DA-MMSE equals the optimal SINR")
{
    for (auto [M, K] : {std::pair<std::size_t, std::size_t>{16, 3}, {64, 8}, {4, 6}})
    {
        const Setup s = make_setup(M, K, 1.0 / 3.0, 3 + M);
        const SinrInputs in{s.ch, s.gains, s.C_eta, 1.0, 1.0};
        const CombinerSet c = da_mmse_combiner(s.ch, s.gains, s.C_eta, 1.0, 1.0);
        const CombinerSet mr = da_mr_combiner(s.ch, s.gains);
        for (std::size_t k = 0; k < K; ++k)
        {
            const double opt = sinr_optimal(in, k);
            CHECK(sinr_ideal_ue(c.V.col(static_cast<Eigen::Index>(k)), in, k) ==
                  doctest::Approx(opt).epsilon(1e-8));
            CHECK(sinr_ideal_ue(mr.V.col(static_cast<Eigen::Index>(k)), in, k) <= opt * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("SINR decreases with noise power")
{
    const Setup s = make_setup(16, 4, 1.0 / 3.0, 4);
    double prev = INFINITY;
    for (double sigma2 : {0.01, 0.1, 1.0, 10.0, 100.0})
    {
        const SinrInputs in{s.ch, s.gains, s.C_eta, 1.0, sigma2};
        const double g = sinr_optimal(in, 1);
        CHECK(g < prev);
        prev = g;
    }
}

TEST_CASE("impaired-UE SINR")
{
    const Setup s = make_setup(16, 4, 1.0 / 3.0, 5);
    const SinrInputs in{s.ch, s.gains, s.C_eta, 1.0, 1.0};
    const CombinerSet c = da_mmse_combiner(s.ch, s.gains, s.C_eta, 1.0, 1.0);
    for (std::size_t k = 0; k < 4; ++k)
    {
        const CVector v = c.V.col(static_cast<Eigen::Index>(k));
        const double g = sinr_ideal_ue(v, in, k);
        CHECK(sinr_impaired_ue(v, in, 1.0, k) == doctest::Approx(g).epsilon(1e-14));
        CHECK(sinr_impaired_ue(v, in, 0.0, k) == 0.0);
        for (double kappa : {0.5, 0.9, 0.99})
        {
            const double gp = sinr_impaired_ue(v, in, kappa, k);
            CHECK(gp < kappa / (1.0 - kappa));
            CHECK(gp <= g);
            // kappa g / (1 + (1 - kappa) g)
            CHECK(gp == doctest::Approx(kappa * g / (1.0 + (1.0 - kappa) * g)).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(sinr_impaired_ue(c.V.col(0), in, 1.5, 0), DomainError);
    CHECK_THROWS_AS(sinr_ideal_ue(c.V.col(0), in, 4), ShapeError);
}

TEST_CASE("evaluate_sinr reports log2(1 + gamma)")
{
    const Setup s = make_setup(8, 2, 1.0 / 3.0, 6);
    const SinrInputs in{s.ch, s.gains, s.C_eta, 1.0, 1.0};
    const CombinerSet c = da_mr_combiner(s.ch, s.gains);
    const SinrReport r = evaluate_sinr(c, in, SinrVariant::impaired_ue, 0.99, DistortionMode::diagonal);
    REQUIRE(r.gamma.size() == 2);
    for (std::size_t k = 0; k < 2; ++k)
        CHECK(r.se[k] == doctest::Approx(std::log2(1.0 + r.gamma[k])));
    CHECK(r.approximate());
}

TEST_CASE("ergodic SE for one antenna and one user matches quadrature")
{
    SUBCASE("no distortion, kappa = 1")
    {
        ScenarioConfig cfg;
        cfg.M = 1;
        cfg.K = 1;
        cfg.alpha = 0.0;
        cfg.kappa = 1.0;
        cfg.trials = 20'000;
        cfg.seed = 7;
        const ErgodicResult r = ergodic_se(cfg, 2);
        const double oracle = 0.8603473822708858;
        CHECK(std::abs(r.mean_se - oracle) <= 3.0 * r.mean_se_std_error);
        CHECK(exp_expectation([](double x) { return std::log2(1.0 + x); }) ==
              doctest::Approx(oracle).epsilon(1e-9));
    }
    SUBCASE("third-order distortion, kappa = 0.99")
    {
        ScenarioConfig cfg;
        cfg.M = 1;
        cfg.K = 1;
        cfg.trials = 20'000;
        cfg.seed = 8;
        for (CombinerKind comb : {CombinerKind::MR, CombinerKind::DA_MR, CombinerKind::DA_MMSE})
        {
            cfg.combiner = comb;
            const ErgodicResult r = ergodic_se(cfg, 2);
            const double a = amplifier_gain_coeff(cfg.alpha, cfg.boff_db, cfg.p, 1);
            const double kappa = cfg.kappa;
            const double oracle = exp_expectation(
                [&](double x)
                {
                    const double d = 1.0 - 2.0 * a * x;
                    const double sig = d * d * x;
                    const double g = kappa * sig / ((1.0 - kappa) * sig + 2.0 * a * a * x * x * x + 1.0);
                    return std::log2(1.0 + g);
                });
            CHECK(std::abs(r.mean_se - oracle) <= 3.0 * r.mean_se_std_error);
        }
    }
}

TEST_CASE("DA-MMSE is never below DA-MR on a shared draw")
{
    ScenarioConfig cfg;
    cfg.M = 32;
    cfg.K = 5;
    for (std::uint64_t t = 0; t < 50; ++t)
    {
        cfg.combiner = CombinerKind::DA_MMSE;
        RngStream r1(9, t);
        const SinrReport mmse = simulate_block(cfg, r1);
        cfg.combiner = CombinerKind::DA_MR;
        RngStream r2(9, t);
        const SinrReport mr = simulate_block(cfg, r2);
        for (std::size_t k = 0; k < cfg.K; ++k)
            CHECK(mmse.gamma[k] >= mr.gamma[k] * (1.0 - 1e-12));
    }
}

TEST_CASE("standard error shrinks with trials")
{
    ScenarioConfig cfg;
    cfg.M = 8;
    cfg.K = 2;
    cfg.seed = 10;
    cfg.trials = 1000;
    const ErgodicResult r1 = ergodic_se(cfg);
    cfg.trials = 2000;
    const ErgodicResult r2 = ergodic_se(cfg);
    CHECK(r1.mean_se_std_error / r2.mean_se_std_error == doctest::Approx(std::sqrt(2.0)).epsilon(0.15));
}

TEST_CASE("results do not depend on thread count")
{
    ScenarioConfig cfg;
    cfg.M = 16;
    cfg.K = 3;
    cfg.trials = 64;
    cfg.seed = 11;
    const ErgodicResult a = ergodic_se(cfg, 1, 3);
    const ErgodicResult b = ergodic_se(cfg, 4, 3);
    CHECK(a.per_trial_se == b.per_trial_se);
    CHECK(a.mean_se == b.mean_se);
    CHECK(a.mean_se_std_error == b.mean_se_std_error);
    const ErgodicResult c = ergodic_se(cfg, 1, 4);
    CHECK(c.mean_se != a.mean_se);
}

TEST_CASE("diagonal approximation is exact with one antenna")
{
    ScenarioConfig cfg;
    cfg.M = 1;
    cfg.K = 3;
    cfg.trials = 50;
    cfg.seed = 12;
    const ErgodicResult full = ergodic_se(cfg);
    cfg.distortion_mode = DistortionMode::diagonal;
    const ErgodicResult diag = ergodic_se(cfg);
    CHECK(full.per_trial_se == diag.per_trial_se);
    CHECK(diag.approximate());
    CHECK_FALSE(full.approximate());
}

TEST_CASE("numerical failure names the trial")
{
    // Without noise the user-exclusive matrix is singular to working precision.
    ScenarioConfig cfg;
    cfg.M = 8;
    cfg.K = 1;
    cfg.trials = 50;
    cfg.alpha = 0.0;
    cfg.sigma2 = 1e-300;
    cfg.combiner = CombinerKind::DA_MMSE;
    try
    {
        (void)ergodic_se(cfg, 2);
        FAIL("expected TrialError");
    }
    catch (const TrialError &e)
    {
        CHECK(e.trial() < cfg.trials);
        CHECK(std::string(e.what()).find("trial") != std::string::npos);
    }
}
