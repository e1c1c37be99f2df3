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

#include "mimodist/config.hpp"
#include "mimodist/errors.hpp"
#include "mimodist/experiments.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <ctime>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace
{
    constexpr int exit_ok = 0;
    constexpr int exit_validation = 1;
    constexpr int exit_numerical = 2;

    std::string utc_timestamp()
    {
        const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        std::tm tm{};
        gmtime_r(&now, &tm);
        char buf[32];
        std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
        return buf;
    }

    struct Options
    {
        std::string config;
        std::string out;
        std::optional<std::uint64_t> seed;
        std::optional<std::size_t> trials;
        std::optional<unsigned> threads;
    };

    int run(mimodist::Experiment experiment, const Options &opt)
    {
        using namespace mimodist;
        ExperimentSpec spec = parse_config(opt.config, experiment);
        if (opt.seed)
            spec.base.seed = *opt.seed;
        if (opt.trials)
            spec.base.trials = *opt.trials;
        if (!opt.out.empty())
            spec.output_path = opt.out;
        if (spec.output_path.empty())
            throw ValidationError("output_path: no output file given (use --out or output_path)");
        spec.validate();
        const unsigned threads = opt.threads ? *opt.threads : default_thread_count();

        const std::string comment = "mimodist " + std::string(to_string(experiment)) + " generated " + utc_timestamp();
        std::ostringstream csv;
        std::size_t count = 0;
        switch (experiment)
        {
        case Experiment::fig1:
        {
            const auto curves = run_fig1(spec.alpha_list, spec.base.boff_db, spec.n_points);
            write_fig1_csv(csv, curves, comment);
            count = curves.size() * spec.n_points;
            break;
        }
        case Experiment::fig2:
        {
            const auto rows = run_fig2(spec, threads);
            write_result_csv(csv, rows, comment);
            count = rows.size();
            break;
        }
        case Experiment::fig3:
        {
            const auto rows = run_fig3(spec, threads);
            write_result_csv(csv, rows, comment);
            count = rows.size();
            break;
        }
        case Experiment::sweep:
        {
            const auto rows = run_sweep(spec, threads);
            write_result_csv(csv, rows, comment);
            count = rows.size();
            break;
        }
        }
        write_file(spec.output_path, csv.str());
        std::cerr << "wrote " << count << " rows to " << spec.output_path << '\n';
        return exit_ok;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Simulate uplink spectral efficiency under correlated receiver distortion"};
    app.require_subcommand(1);

    Options opt;
    std::optional<mimodist::Experiment> chosen;
    auto add_command = [&](const char *name, mimodist::Experiment e, const char *help)
    {
        CLI::App *sub = app.add_subcommand(name, help);
        sub->add_option("--config", opt.config, "Experiment configuration (key = value)")->required();
        sub->add_option("--out", opt.out, "Output CSV path");
        sub->add_option("--seed", opt.seed, "Master seed (overrides config)");
        sub->add_option("--trials", opt.trials, "Monte Carlo trials (overrides config)")->check(CLI::PositiveNumber);
        sub->add_option("--threads", opt.threads, "Worker threads (default: MIMODIST_THREADS or all cores)")
            ->check(CLI::PositiveNumber);
        sub->callback([&chosen, e] { chosen = e; });
    };
    add_command("fig1", mimodist::Experiment::fig1, "Amplifier transfer curves");
    add_command("fig2", mimodist::Experiment::fig2, "BS and UE distortion power versus K");
    add_command("fig3", mimodist::Experiment::fig3, "SE per UE with full or diagonal distortion covariance");
    add_command("sweep", mimodist::Experiment::sweep, "Ergodic SE over a K grid");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_validation;
    }

    try
    {
        return run(*chosen, opt);
    }
    catch (const mimodist::ValidationError &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_validation;
    }
    catch (const mimodist::IoError &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_validation;
    }
    catch (const mimodist::NumericalError &e)
    {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return exit_numerical;
    }
}
