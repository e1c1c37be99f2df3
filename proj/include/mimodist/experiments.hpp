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

#ifndef MIMODIST_EXPERIMENTS_HPP
#define MIMODIST_EXPERIMENTS_HPP

#include "mimodist/config.hpp"
#include "mimodist/numerics.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mimodist
{
    struct ResultRow
    {
        std::string experiment;
        std::optional<std::size_t> K;
        std::string combiner; // "-" when not applicable
        std::string mode;     // full | diagonal | "-"
        std::string metric;   // dB-valued metrics end in "_db"
        double value = 0.0;
        double std_error = 0.0;
        std::uint64_t seed = 0;
    };

    struct AmplifierCurve
    {
        double alpha = 0.0;
        double a = 0.0; // polynomial coefficient at unit input power
        std::vector<double> input;
        std::vector<double> output; // |g(u)| = u |1 - a u^2|
    };

    // Amplitude transfer curves on [0, 1] with a = alpha / b_off at unit average
    // input power. alpha = 0 gives the linear reference.
    std::vector<AmplifierCurve> run_fig1(const std::vector<double> &alpha_list, double boff_db, std::size_t n_points);

    // Sampled distortion moments under MR combining, each normalized by E{||h_k||^2}.
    struct DistortionMoments
    {
        MeanStderr correlated;   // E{h^H C_eta h} / E{||h||^2}
        MeanStderr uncorrelated; // E{h^H diag(C_eta) h} / E{||h||^2}
        MeanStderr ue;           // E{|h^H D h|^2} / E{||h||^2}
        std::size_t trials = 0;
    };

    // Each trial draws H ~ i.i.d. CN(0, 1), builds D and C_eta for the
    // third-order amplifier and averages the quadratic forms over all K users.
    // Ratios of means; standard errors by the delta method.
    DistortionMoments sample_distortion_moments(double alpha, double boff_db, double p, std::size_t M, std::size_t K,
                                                std::size_t trials, std::uint64_t seed, std::uint64_t cell_index,
                                                unsigned threads);

    // Closed-form and sampled BS/UE distortion powers (normalized by sigma2) per K.
    std::vector<ResultRow> run_fig2(const ExperimentSpec &spec, unsigned threads);

    // Ergodic SE per UE for each (K, combiner, mode) plus the relative gap
    // (SE_diagonal - SE_full) / SE_full. Both modes of a K share channel draws.
    std::vector<ResultRow> run_fig3(const ExperimentSpec &spec, unsigned threads);

    // Ergodic SE per UE for each (K, combiner) at the base distortion mode.
    std::vector<ResultRow> run_sweep(const ExperimentSpec &spec, unsigned threads);

    // Shortest round-trip decimal form.
    std::string format_number(double v);

    // `# comment` line, then `experiment,K,combiner,mode,metric,value,stderr,seed`.
    void write_result_csv(std::ostream &out, const std::vector<ResultRow> &rows, const std::string &comment);
    void write_fig1_csv(std::ostream &out, const std::vector<AmplifierCurve> &curves, const std::string &comment);

    // Opens `path` for writing; throws IoError naming the path on failure.
    void write_file(const std::string &path, const std::string &contents);
}

#endif
