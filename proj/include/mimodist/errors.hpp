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

#ifndef MIMODIST_ERRORS_HPP
#define MIMODIST_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mimodist
{
    // Two families: ValidationError for bad inputs (CLI exit code 1) and
    // NumericalError for failures inside the math (CLI exit code 2).

    class ValidationError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    class EmptyDimensionError : public ValidationError
    {
    public:
        using ValidationError::ValidationError;
    };

    class ShapeError : public ValidationError
    {
    public:
        using ValidationError::ValidationError;
    };

    class DomainError : public ValidationError
    {
    public:
        using ValidationError::ValidationError;
    };

    class NumericalError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    class NotPsdError : public NumericalError
    {
    public:
        using NumericalError::NumericalError;
    };

    class FactorizationError : public NumericalError
    {
    public:
        FactorizationError(const std::string &msg, std::size_t pivot)
            : NumericalError(msg + " (failing pivot " + std::to_string(pivot) + ")"), pivot_(pivot) {}

        std::size_t pivot() const noexcept { return pivot_; }

    private:
        std::size_t pivot_;
    };

    class DegenerateCombinerError : public NumericalError
    {
    public:
        explicit DegenerateCombinerError(std::size_t ue)
            : NumericalError("degenerate combiner: D*h_k is zero for UE " + std::to_string(ue)), ue_(ue) {}

        std::size_t ue() const noexcept { return ue_; }

    private:
        std::size_t ue_;
    };

    // File system failures while reading or writing experiment files.
    class IoError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Wraps a numerical failure raised inside one Monte Carlo trial.
    class TrialError : public NumericalError
    {
    public:
        TrialError(std::size_t trial, const std::string &what)
            : NumericalError("trial " + std::to_string(trial) + ": " + what), trial_(trial) {}

        std::size_t trial() const noexcept { return trial_; }

    private:
        std::size_t trial_;
    };
}

#endif
