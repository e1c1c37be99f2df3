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

#include "mimodist/experiments.hpp"
#include "mimodist/channel.hpp"
#include "mimodist/closedform.hpp"
#include "mimodist/errors.hpp"
#include "mimodist/hardware.hpp"
#include "mimodist/se.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <span>

namespace mimodist
{
    std::vector<AmplifierCurve> run_fig1(const std::vector<double> &alpha_list, double boff_db, std::size_t n_points)
    {
        if (n_points < 2)
            throw ValidationError("n_points: value out of range, expected >= 2");
        if (!(boff_db >= 0.0))
            throw ValidationError("boff_db: value out of range, expected >= 0 dB");
        std::vector<AmplifierCurve> curves;
        for (double alpha : alpha_list)
        {
            AmplifierCurve c;
            c.alpha = alpha;
            // Unit average input power, so a = alpha / b_off.
            c.a = amplifier_gain_coeff(alpha, boff_db, 1.0, 1);
            c.input.resize(n_points);
            c.output.resize(n_points);
            for (std::size_t i = 0; i < n_points; ++i)
            {
                const double u = static_cast<double>(i) / static_cast<double>(n_points - 1);
                c.input[i] = u;
                c.output[i] = u * std::abs(1.0 - c.a * u * u);
            }
            curves.push_back(std::move(c));
        }
        return curves;
    }

    namespace
    {
        // mean(num) / mean(den) with a delta-method standard error.
        MeanStderr ratio_of_means(std::span<const double> num, std::span<const double> den)
        {
            const std::size_t n = num.size();
            const double mean_num = pairwise_sum(num) / static_cast<double>(n);
            const double mean_den = pairwise_sum(den) / static_cast<double>(n);
            MeanStderr out;
            out.mean = mean_num / mean_den;
            if (n < 2)
                return out;
            std::vector<double> resid(n);
            for (std::size_t i = 0; i < n; ++i)
                resid[i] = num[i] - out.mean * den[i];
            const MeanStderr r = mean_and_stderr(resid);
            out.std_error = r.std_error / mean_den;
            return out;
        }
    }

    DistortionMoments sample_distortion_moments(double alpha, double boff_db, double p, std::size_t M, std::size_t K,
                                                std::size_t trials, std::uint64_t seed, std::uint64_t cell_index,
                                                unsigned threads)
    {
        if (trials < 2)
            throw ValidationError("trials: value out of range, expected >= 2");
        ScenarioConfig cfg;
        cfg.M = M;
        cfg.K = K;
        cfg.p = p;
        cfg.alpha = alpha;
        cfg.boff_db = boff_db;
        cfg.trials = trials;
        cfg.seed = seed;
        cfg.validate();

        const double a = amplifier_gain_coeff(alpha, boff_db, p, K);
        const RVector coeffs = RVector::Constant(static_cast<Eigen::Index>(M), a);
        const RngStream cell(seed, cell_index);

        // Per-trial averages over the K users.
        std::vector<double> corr(trials), uncorr(trials), ue(trials), norm2(trials);
        parallel_for(trials, threads,
                     [&](std::size_t t)
                     {
                         RngStream rng = cell.substream(t);
                         const ChannelRealization ch = sample_channel(cfg, rng);
                         const CVector d = bussgang_gain_third_order(coeffs, ch.C_uu);
                         const CMatrix C_eta = distortion_covariance_third_order(coeffs, ch.C_uu);
                         const RVector c_diag = C_eta.diagonal().real();
                         const CMatrix quad = ch.H.adjoint() * C_eta * ch.H;
                         double s_corr = 0.0, s_uncorr = 0.0, s_ue = 0.0, s_norm = 0.0;
                         for (Eigen::Index k = 0; k < ch.H.cols(); ++k)
                         {
                             const auto h = ch.H.col(k);
                             s_corr += quad(k, k).real();
                             s_uncorr += (h.cwiseAbs2().cwiseProduct(c_diag)).sum();
                             s_ue += std::norm((h.adjoint() * d.asDiagonal() * h)(0));
                             s_norm += h.squaredNorm();
                         }
                         const double inv_k = 1.0 / static_cast<double>(ch.H.cols());
                         corr[t] = s_corr * inv_k;
                         uncorr[t] = s_uncorr * inv_k;
                         ue[t] = s_ue * inv_k;
                         norm2[t] = s_norm * inv_k;
                     });

        DistortionMoments out;
        out.trials = trials;
        out.correlated = ratio_of_means(corr, norm2);
        out.uncorrelated = ratio_of_means(uncorr, norm2);
        out.ue = ratio_of_means(ue, norm2);
        return out;
    }

    std::vector<ResultRow> run_fig2(const ExperimentSpec &spec, unsigned threads)
    {
        spec.validate();
        const ScenarioConfig &b = spec.base;
        const std::string exp = "fig2";
        std::vector<ResultRow> rows;
        auto add = [&](std::size_t K, const char *mode, const std::string &metric, double value, double se)
        { rows.push_back({exp, K, "MR", mode, metric, value, se, b.seed}); };

        for (std::size_t K : spec.K_grid)
        {
            const double corr = closedform::lemma2_correlated(b.alpha, b.boff_db, b.p, b.M, K) / b.sigma2;
            const double uncorr = closedform::lemma2_uncorrelated(b.alpha, b.boff_db, b.p, K) / b.sigma2;
            const double ue =
                b.p * (1.0 - b.kappa) * closedform::ue_distortion_moment(b.alpha, b.boff_db, b.M, K) / b.sigma2;

            add(K, "full", "bs_distortion", corr, 0.0);
            add(K, "full", "bs_distortion_db", linear_to_db(corr), 0.0);
            add(K, "diagonal", "bs_distortion_approx", uncorr, 0.0);
            add(K, "diagonal", "bs_distortion_approx_db", linear_to_db(uncorr), 0.0);
            add(K, "full", "ue_distortion", ue, 0.0);
            add(K, "full", "ue_distortion_db", linear_to_db(ue), 0.0);
            add(K, "-", "corr_gap_db", linear_to_db(closedform::distortion_ratio(b.M, K)), 0.0);

            const DistortionMoments mc =
                sample_distortion_moments(b.alpha, b.boff_db, b.p, b.M, K, b.trials, b.seed, K, threads);
            const double ue_scale = b.p * (1.0 - b.kappa) / b.sigma2;
            add(K, "full", "bs_distortion_mc", mc.correlated.mean / b.sigma2, mc.correlated.std_error / b.sigma2);
            add(K, "diagonal", "bs_distortion_approx_mc", mc.uncorrelated.mean / b.sigma2,
                mc.uncorrelated.std_error / b.sigma2);
            add(K, "full", "ue_distortion_mc", ue_scale * mc.ue.mean, ue_scale * mc.ue.std_error);
        }
        return rows;
    }

    std::vector<ResultRow> run_fig3(const ExperimentSpec &spec, unsigned threads)
    {
        spec.validate();
        std::vector<ResultRow> rows;
        for (std::size_t K : spec.K_grid)
        {
            for (CombinerKind comb : spec.combiners)
            {
                ScenarioConfig cfg = spec.base;
                cfg.K = K;
                cfg.combiner = comb;
                cfg.diag_scope = spec.diag_scope;
                cfg.ue_gains.clear();

                cfg.distortion_mode = DistortionMode::full;
                const ErgodicResult full = ergodic_se(cfg, threads, K);
                cfg.distortion_mode = DistortionMode::diagonal;
                const ErgodicResult diag = ergodic_se(cfg, threads, K);

                const std::string name(to_string(comb));
                rows.push_back({"fig3", K, name, "full", "se_per_ue", full.mean_se, full.mean_se_std_error, cfg.seed});
                rows.push_back(
                    {"fig3", K, name, "diagonal", "se_per_ue_approx", diag.mean_se, diag.mean_se_std_error, cfg.seed});
                const MeanStderr ratio = ratio_of_means(diag.per_trial_se, full.per_trial_se);
                rows.push_back({"fig3", K, name, "-", "relative_gap", ratio.mean - 1.0, ratio.std_error, cfg.seed});
            }
        }
        return rows;
    }

    std::vector<ResultRow> run_sweep(const ExperimentSpec &spec, unsigned threads)
    {
        spec.validate();
        std::vector<ResultRow> rows;
        for (std::size_t K : spec.K_grid)
            for (CombinerKind comb : spec.combiners)
            {
                ScenarioConfig cfg = spec.base;
                cfg.K = K;
                cfg.combiner = comb;
                cfg.diag_scope = spec.diag_scope;
                const ErgodicResult r = ergodic_se(cfg, threads, K);
                const bool approx = r.approximate();
                rows.push_back({"sweep", K, std::string(to_string(comb)), std::string(to_string(cfg.distortion_mode)),
                                approx ? "se_per_ue_approx" : "se_per_ue", r.mean_se, r.mean_se_std_error, cfg.seed});
            }
        return rows;
    }

    std::string format_number(double v)
    {
        char buf[64];
        const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
        if (ec != std::errc())
            return "nan";
        return std::string(buf, ptr);
    }

    void write_result_csv(std::ostream &out, const std::vector<ResultRow> &rows, const std::string &comment)
    {
        out << "# " << comment << '\n';
        out << "experiment,K,combiner,mode,metric,value,stderr,seed\n";
        for (const ResultRow &r : rows)
        {
            out << r.experiment << ',' << (r.K ? std::to_string(*r.K) : std::string()) << ',' << r.combiner << ','
                << r.mode << ',' << r.metric << ',' << format_number(r.value) << ',' << format_number(r.std_error)
                << ',' << r.seed << '\n';
        }
    }

    void write_fig1_csv(std::ostream &out, const std::vector<AmplifierCurve> &curves, const std::string &comment)
    {
        out << "# " << comment << '\n';
        out << "experiment,alpha,input_amplitude,output_amplitude\n";
        for (const AmplifierCurve &c : curves)
            for (std::size_t i = 0; i < c.input.size(); ++i)
                out << "fig1," << format_number(c.alpha) << ',' << format_number(c.input[i]) << ','
                    << format_number(c.output[i]) << '\n';
    }

    void write_file(const std::string &path, const std::string &contents)
    {
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        if (!f)
            throw IoError("cannot open '" + path + "' for writing");
        f << contents;
        f.flush();
        if (!f)
            throw IoError("failed writing '" + path + "'");
    }
}
