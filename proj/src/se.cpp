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

#include "mimodist/se.hpp"
#include "mimodist/errors.hpp"
#include "mimodist/hardware.hpp"

#include <cmath>
#include <exception>
#include <optional>
#include <string>

namespace mimodist
{
    namespace
    {
        void check_inputs(const CVector *v, const SinrInputs &in, std::size_t k)
        {
            const Eigen::Index M = in.ch.H.rows();
            if (k >= in.ch.users())
                throw ShapeError("sinr: UE index " + std::to_string(k) + " out of range");
            if (in.gains.size() != M || in.C_eta.rows() != M || in.C_eta.cols() != M)
                throw ShapeError("sinr: D or C_eta does not match antenna count " + std::to_string(M));
            if (v && v->size() != M)
                throw ShapeError("sinr: combiner length does not match antenna count");
            if (!(in.sigma2 > 0.0) || !(in.p > 0.0))
                throw DomainError("sinr: p and sigma2 must be > 0");
        }

        struct QuadraticTerms
        {
            double desired = 0.0;      // p |v^H g_k|^2
            double interference = 0.0; // sum_{i != k} p |v^H g_i|^2
            double distortion = 0.0;   // v^H C_eta v
            double noise = 0.0;        // sigma2 ||v||^2
        };

        QuadraticTerms quadratic_terms(const CVector &v, const SinrInputs &in, std::size_t k)
        {
            const CMatrix G = in.gains.asDiagonal() * in.ch.H;
            const Eigen::RowVectorXcd proj = v.adjoint() * G;
            QuadraticTerms t;
            for (Eigen::Index i = 0; i < proj.size(); ++i)
            {
                const double power = in.p * std::norm(proj[i]);
                if (static_cast<std::size_t>(i) == k)
                    t.desired = power;
                else
                    t.interference += power;
            }
            t.distortion = (v.adjoint() * in.C_eta * v)(0).real();
            t.noise = in.sigma2 * v.squaredNorm();
            return t;
        }
    }

    double sinr_ideal_ue(const CVector &v, const SinrInputs &in, std::size_t k)
    {
        check_inputs(&v, in, k);
        if (!(v.squaredNorm() > 0.0))
            throw ValidationError("sinr_ideal_ue: combiner is the zero vector");
        const QuadraticTerms t = quadratic_terms(v, in, k);
        return t.desired / (t.interference + t.distortion + t.noise);
    }

    double sinr_impaired_ue(const CVector &v, const SinrInputs &in, double kappa, std::size_t k)
    {
        check_inputs(&v, in, k);
        if (!(kappa >= 0.0 && kappa <= 1.0))
            throw DomainError("kappa: value out of range, expected [0,1]");
        if (!(v.squaredNorm() > 0.0))
            throw ValidationError("sinr_impaired_ue: combiner is the zero vector");
        const QuadraticTerms t = quadratic_terms(v, in, k);
        return kappa * t.desired / (t.interference + (1.0 - kappa) * t.desired + t.distortion + t.noise);
    }

    double sinr_optimal(const SinrInputs &in, std::size_t k)
    {
        check_inputs(nullptr, in, k);
        const CMatrix G = in.gains.asDiagonal() * in.ch.H;
        CMatrix Sigma = in.C_eta;
        for (Eigen::Index i = 0; i < G.cols(); ++i)
            if (static_cast<std::size_t>(i) != k)
                Sigma.noalias() += in.p * G.col(i) * G.col(i).adjoint();
        Sigma.diagonal().array() += in.sigma2;
        Sigma = 0.5 * (Sigma + Sigma.adjoint()).eval();
        const CMatrix x = hpd_solve(Sigma, G.col(static_cast<Eigen::Index>(k)));
        return in.p * (G.col(static_cast<Eigen::Index>(k)).adjoint() * x)(0).real();
    }

    SinrReport evaluate_sinr(const CombinerSet &combiners, const SinrInputs &in, SinrVariant variant, double kappa,
                             DistortionMode mode)
    {
        SinrReport out;
        out.variant = variant;
        out.mode = mode;
        const auto K = static_cast<std::size_t>(combiners.V.cols());
        out.gamma.resize(K);
        out.se.resize(K);
        for (std::size_t k = 0; k < K; ++k)
        {
            const CVector v = combiners.V.col(static_cast<Eigen::Index>(k));
            out.gamma[k] = variant == SinrVariant::ideal_ue ? sinr_ideal_ue(v, in, k)
                                                            : sinr_impaired_ue(v, in, kappa, k);
            out.se[k] = std::log2(1.0 + out.gamma[k]);
        }
        return out;
    }

    SinrReport simulate_block(const ScenarioConfig &cfg, RngStream &rng)
    {
        const ChannelRealization ch = sample_channel(cfg, rng);
        const double a = amplifier_gain_coeff(cfg.alpha, cfg.boff_db, cfg.p, cfg.K);
        const RVector coeffs = RVector::Constant(static_cast<Eigen::Index>(cfg.M), a);
        const BussgangDecomposition bg = bussgang_third_order(coeffs, ch.C_uu);

        const bool diagonal = cfg.distortion_mode == DistortionMode::diagonal;
        const CMatrix C_eval = diagonal ? diag_of(bg.C_eta) : bg.C_eta;
        const bool combiner_uses_diag = diagonal && cfg.diag_scope == DiagScope::both;
        const CMatrix &C_comb = combiner_uses_diag ? C_eval : bg.C_eta;

        CombinerSet combiners;
        switch (cfg.combiner)
        {
        case CombinerKind::MR:
            combiners = mr_combiner(ch);
            break;
        case CombinerKind::DA_MR:
            combiners = da_mr_combiner(ch, bg.gains);
            break;
        case CombinerKind::DA_MMSE:
            combiners = da_mmse_combiner(ch, bg.gains, C_comb, cfg.p, cfg.sigma2,
                                         combiner_uses_diag ? DistortionMode::diagonal : DistortionMode::full);
            break;
        }

        const SinrInputs in{ch, bg.gains, C_eval, cfg.p, cfg.sigma2};
        return evaluate_sinr(combiners, in, SinrVariant::impaired_ue, cfg.kappa, cfg.distortion_mode);
    }

    ErgodicResult ergodic_se(const ScenarioConfig &cfg, unsigned threads, std::uint64_t cell_index)
    {
        cfg.validate();
        const std::size_t T = cfg.trials;
        const std::size_t K = cfg.K;
        const RngStream cell(cfg.seed, cell_index);

        // se[t * K + k]; every slot is written by exactly one trial.
        std::vector<double> se(T * K, 0.0);
        std::vector<std::optional<std::string>> failures(T);
        parallel_for(T, threads,
                     [&](std::size_t t)
                     {
                         try
                         {
                             RngStream rng = cell.substream(t);
                             const SinrReport r = simulate_block(cfg, rng);
                             for (std::size_t k = 0; k < K; ++k)
                                 se[t * K + k] = r.se[k];
                         }
                         catch (const NumericalError &e)
                         {
                             failures[t] = e.what();
                         }
                     });
        for (std::size_t t = 0; t < T; ++t)
            if (failures[t])
                throw TrialError(t, *failures[t]);

        ErgodicResult out;
        out.trials = T;
        out.cell_index = cell_index;
        out.config = cfg;
        out.per_ue_mean.resize(K);
        out.per_ue_std_error.resize(K);
        std::vector<double> column(T);
        for (std::size_t k = 0; k < K; ++k)
        {
            for (std::size_t t = 0; t < T; ++t)
                column[t] = se[t * K + k];
            const MeanStderr ms = mean_and_stderr(column);
            out.per_ue_mean[k] = ms.mean;
            out.per_ue_std_error[k] = ms.std_error;
        }
        out.per_trial_se.resize(T);
        for (std::size_t t = 0; t < T; ++t)
            out.per_trial_se[t] = pairwise_sum(std::span<const double>(se).subspan(t * K, K)) / static_cast<double>(K);
        const MeanStderr overall = mean_and_stderr(out.per_trial_se);
        out.mean_se = overall.mean;
        out.mean_se_std_error = overall.std_error;
        return out;
    }
}
