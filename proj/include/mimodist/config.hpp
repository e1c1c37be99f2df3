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

#ifndef MIMODIST_CONFIG_HPP
#define MIMODIST_CONFIG_HPP

#include "mimodist/channel.hpp"

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace mimodist
{
    enum class Experiment
    {
        fig1,
        fig2,
        fig3,
        sweep
    };

    std::string_view to_string(Experiment e);
    Experiment parse_experiment(std::string_view text);

    // Experiment description read from a flat `key = value` file.
    //
    // Keys and defaults:
    //   experiment       fig1 | fig2 | fig3 | sweep           (required)
    //   M                antennas                              (required except fig1)
    //   K                UEs for single-K use                  1
    //   p                transmit power per UE                 1
    //   sigma2           noise power                           1
    //   alpha            amplifier nonlinearity                1/3
    //   boff_db          back-off in dB                        7 (0 for fig1)
    //   kappa            UE hardware quality in [0,1]          0.99
    //   combiner         MR | DA-MR | DA-MMSE                  DA-MMSE
    //   distortion_mode  full | diagonal                       full
    //   diag_scope       both | sinr_only                      both
    //   trials           Monte Carlo channel realizations      2000
    //   seed             master seed                           1
    //   ue_gains         comma list of K large-scale gains     all ones
    //   K_grid           comma list or range a..b              1..20
    //   combiners        comma list of combiners               DA-MMSE,DA-MR
    //   output_path      CSV destination                       (none; --out)
    //   alpha_list       fig1 amplifier parameters             0,0.3333333333333333,0.134
    //   n_points         fig1 samples on [0,1]                 101
    struct ExperimentSpec
    {
        Experiment experiment = Experiment::fig3;
        ScenarioConfig base;
        std::vector<std::size_t> K_grid;
        std::vector<CombinerKind> combiners;
        DiagScope diag_scope = DiagScope::both;
        std::string output_path;
        std::vector<double> alpha_list;
        std::size_t n_points = 101;

        // Keys present in the file, for defaults that depend on the experiment.
        std::set<std::string> explicit_keys;

        // Throws ValidationError naming the offending key.
        void validate() const;
    };

    // Parses configuration text. If the text has no `experiment` key, `fallback`
    // is used; if both are present they must agree.
    ExperimentSpec parse_config_text(std::string_view text, std::optional<Experiment> fallback = std::nullopt);

    // Reads and parses a configuration file. Missing or unreadable files raise
    // ValidationError with the path.
    ExperimentSpec parse_config(const std::string &path, std::optional<Experiment> fallback = std::nullopt);
}

#endif
