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

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace mimodist
{
    std::string_view to_string(Experiment e)
    {
        switch (e)
        {
        case Experiment::fig1:
            return "fig1";
        case Experiment::fig2:
            return "fig2";
        case Experiment::fig3:
            return "fig3";
        case Experiment::sweep:
            return "sweep";
        }
        return "?";
    }

    Experiment parse_experiment(std::string_view text)
    {
        if (text == "fig1")
            return Experiment::fig1;
        if (text == "fig2")
            return Experiment::fig2;
        if (text == "fig3")
            return Experiment::fig3;
        if (text == "sweep")
            return Experiment::sweep;
        throw ValidationError("experiment: unknown value '" + std::string(text) +
                              "', expected one of fig1, fig2, fig3, sweep");
    }

    namespace
    {
        std::string_view trim(std::string_view s)
        {
            const auto first = s.find_first_not_of(" \t\r\n");
            if (first == std::string_view::npos)
                return {};
            const auto last = s.find_last_not_of(" \t\r\n");
            return s.substr(first, last - first + 1);
        }

        std::vector<std::string_view> split_list(std::string_view s)
        {
            std::vector<std::string_view> out;
            while (true)
            {
                const auto comma = s.find(',');
                out.push_back(trim(s.substr(0, comma)));
                if (comma == std::string_view::npos)
                    break;
                s.remove_prefix(comma + 1);
            }
            return out;
        }

        [[noreturn]] void bad_value(const std::string &key, std::string_view value, const std::string &expected)
        {
            throw ValidationError(key + ": invalid value '" + std::string(value) + "', expected " + expected);
        }

        // Decimal number or a simple fraction such as 1/3.
        double parse_real(const std::string &key, std::string_view text)
        {
            auto parse_one = [&](std::string_view t)
            {
                t = trim(t);
                double v = 0.0;
                const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
                if (ec != std::errc() || ptr != t.data() + t.size() || t.empty() || !std::isfinite(v))
                    bad_value(key, text, "a real number");
                return v;
            };
            const auto slash = text.find('/');
            if (slash == std::string_view::npos)
                return parse_one(text);
            const double den = parse_one(text.substr(slash + 1));
            if (den == 0.0)
                bad_value(key, text, "a nonzero denominator");
            return parse_one(text.substr(0, slash)) / den;
        }

        std::uint64_t parse_unsigned(const std::string &key, std::string_view text)
        {
            text = trim(text);
            std::uint64_t v = 0;
            const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
            if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
                bad_value(key, text, "a non-negative integer");
            return v;
        }

        std::vector<std::size_t> parse_k_grid(const std::string &key, std::string_view text)
        {
            std::vector<std::size_t> out;
            const auto dots = text.find("..");
            if (dots != std::string_view::npos)
            {
                const auto lo = parse_unsigned(key, text.substr(0, dots));
                const auto hi = parse_unsigned(key, text.substr(dots + 2));
                if (hi < lo)
                    bad_value(key, text, "a range a..b with a <= b");
                for (auto k = lo; k <= hi; ++k)
                    out.push_back(static_cast<std::size_t>(k));
                return out;
            }
            for (auto item : split_list(text))
                out.push_back(static_cast<std::size_t>(parse_unsigned(key, item)));
            return out;
        }
    }

    void ExperimentSpec::validate() const
    {
        if (experiment != Experiment::fig1)
            base.validate();
        if (experiment == Experiment::fig2 || experiment == Experiment::fig3 || experiment == Experiment::sweep)
        {
            if (K_grid.empty())
                throw ValidationError("K_grid: must be non-empty");
            for (std::size_t i = 0; i < K_grid.size(); ++i)
            {
                if (K_grid[i] < 1)
                    throw ValidationError("K_grid: entries must be >= 1");
                if (i > 0 && K_grid[i] <= K_grid[i - 1])
                    throw ValidationError("K_grid: entries must be strictly increasing");
            }
            if (!base.ue_gains.empty())
                throw ValidationError("ue_gains: only supported for a single K, not with a K_grid experiment");
        }
        if (experiment == Experiment::fig3 || experiment == Experiment::sweep)
            if (combiners.empty())
                throw ValidationError("combiners: must be non-empty");
        if (experiment == Experiment::fig1)
        {
            if (alpha_list.empty())
                throw ValidationError("alpha_list: must be non-empty");
            for (double a : alpha_list)
                if (!(a >= 0.0))
                    throw ValidationError("alpha_list: entries must be >= 0");
            if (n_points < 2)
                throw ValidationError("n_points: value out of range, expected >= 2");
            if (!(base.boff_db >= 0.0))
                throw ValidationError("boff_db: value out of range, expected >= 0 dB");
        }
    }

    ExperimentSpec parse_config_text(std::string_view text, std::optional<Experiment> fallback)
    {
        std::map<std::string, std::string, std::less<>> entries;
        std::size_t line_no = 0;
        while (!text.empty())
        {
            const auto nl = text.find('\n');
            std::string_view line = text.substr(0, nl);
            text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
            ++line_no;

            if (const auto hash = line.find('#'); hash != std::string_view::npos)
                line = line.substr(0, hash);
            line = trim(line);
            if (line.empty())
                continue;
            const auto eq = line.find('=');
            if (eq == std::string_view::npos)
                throw ValidationError("line " + std::to_string(line_no) + ": expected 'key = value'");
            const std::string key(trim(line.substr(0, eq)));
            const std::string value(trim(line.substr(eq + 1)));
            if (key.empty())
                throw ValidationError("line " + std::to_string(line_no) + ": empty key");
            if (value.empty())
                throw ValidationError(key + ": empty value on line " + std::to_string(line_no));
            if (!entries.emplace(key, value).second)
                throw ValidationError(key + ": duplicate key on line " + std::to_string(line_no));
        }

        ExperimentSpec spec;
        std::vector<std::string> missing;
        if (auto it = entries.find("experiment"); it != entries.end())
        {
            spec.experiment = parse_experiment(it->second);
            if (fallback && *fallback != spec.experiment)
                throw ValidationError("experiment: config says '" + it->second + "' but '" +
                                      std::string(to_string(*fallback)) + "' was requested");
        }
        else if (fallback)
            spec.experiment = *fallback;
        else
            missing.push_back("experiment");
        const bool experiment_known = missing.empty();
        if (!entries.contains("M") && (!experiment_known || spec.experiment != Experiment::fig1))
            missing.push_back("M");
        if (!missing.empty())
        {
            std::string list;
            for (const auto &m : missing)
                list += (list.empty() ? "" : ", ") + m;
            throw ValidationError("missing required keys: " + list);
        }

        spec.K_grid = parse_k_grid("K_grid", "1..20");
        spec.combiners = {CombinerKind::DA_MMSE, CombinerKind::DA_MR};
        spec.alpha_list = {0.0, 1.0 / 3.0, 0.1340};
        if (spec.experiment == Experiment::fig1)
            spec.base.boff_db = 0.0;

        auto &b = spec.base;
        using Setter = std::function<void(const std::string &, const std::string &)>;
        const std::map<std::string, Setter, std::less<>> setters = {
            {"experiment", [](const std::string &, const std::string &) {}},
            {"M", [&](const std::string &k, const std::string &v) { b.M = parse_unsigned(k, v); }},
            {"K", [&](const std::string &k, const std::string &v) { b.K = parse_unsigned(k, v); }},
            {"p", [&](const std::string &k, const std::string &v) { b.p = parse_real(k, v); }},
            {"sigma2", [&](const std::string &k, const std::string &v) { b.sigma2 = parse_real(k, v); }},
            {"alpha", [&](const std::string &k, const std::string &v) { b.alpha = parse_real(k, v); }},
            {"boff_db", [&](const std::string &k, const std::string &v) { b.boff_db = parse_real(k, v); }},
            {"kappa", [&](const std::string &k, const std::string &v) { b.kappa = parse_real(k, v); }},
            {"combiner", [&](const std::string &, const std::string &v) { b.combiner = parse_combiner(v); }},
            {"distortion_mode",
             [&](const std::string &, const std::string &v) { b.distortion_mode = parse_distortion_mode(v); }},
            {"diag_scope", [&](const std::string &, const std::string &v) { spec.diag_scope = parse_diag_scope(v); }},
            {"trials", [&](const std::string &k, const std::string &v) { b.trials = parse_unsigned(k, v); }},
            {"seed", [&](const std::string &k, const std::string &v) { b.seed = parse_unsigned(k, v); }},
            {"ue_gains",
             [&](const std::string &k, const std::string &v)
             {
                 b.ue_gains.clear();
                 for (auto item : split_list(v))
                     b.ue_gains.push_back(parse_real(k, item));
             }},
            {"K_grid", [&](const std::string &k, const std::string &v) { spec.K_grid = parse_k_grid(k, v); }},
            {"combiners",
             [&](const std::string &, const std::string &v)
             {
                 spec.combiners.clear();
                 for (auto item : split_list(v))
                     spec.combiners.push_back(parse_combiner(item));
             }},
            {"output_path", [&](const std::string &, const std::string &v) { spec.output_path = v; }},
            {"alpha_list",
             [&](const std::string &k, const std::string &v)
             {
                 spec.alpha_list.clear();
                 for (auto item : split_list(v))
                     spec.alpha_list.push_back(parse_real(k, item));
             }},
            {"n_points", [&](const std::string &k, const std::string &v) { spec.n_points = parse_unsigned(k, v); }},
        };

        for (const auto &[key, value] : entries)
        {
            const auto it = setters.find(key);
            if (it == setters.end())
                throw ValidationError(key + ": unknown key");
            it->second(key, value);
            spec.explicit_keys.insert(key);
        }
        b.diag_scope = spec.diag_scope;
        spec.validate();
        return spec;
    }

    ExperimentSpec parse_config(const std::string &path, std::optional<Experiment> fallback)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw ValidationError("config: cannot open '" + path + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        try
        {
            return parse_config_text(buf.str(), fallback);
        }
        catch (const ValidationError &e)
        {
            throw ValidationError(path + ": " + e.what());
        }
    }
}
