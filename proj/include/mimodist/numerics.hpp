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

#ifndef MIMODIST_NUMERICS_HPP
#define MIMODIST_NUMERICS_HPP

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

namespace mimodist
{
    using cd = std::complex<double>;
    using CMatrix = Eigen::MatrixXcd;
    using CVector = Eigen::VectorXcd;
    using RVector = Eigen::VectorXd;

    // Reproducible random stream keyed by (master_seed, stream_index).
    //
    // The engine is std::mt19937_64, whose output sequence is fixed by the C++
    // standard, seeded from a SplitMix64 hash of the key. Gaussian samples are
    // produced with Box-Muller from the raw 64-bit output, so no
    // implementation-defined std::*_distribution is involved.
    class RngStream
    {
    public:
        RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

        std::uint64_t master_seed() const noexcept { return master_seed_; }
        std::uint64_t stream_index() const noexcept { return stream_index_; }

        // Independent child stream, e.g. one per Monte Carlo trial of a cell.
        RngStream substream(std::uint64_t index) const;

        // Uniform on (0, 1].
        double uniform();

        // CN(0, 1): real and imaginary parts each N(0, 1/2).
        cd complex_gaussian();

    private:
        RngStream(std::uint64_t master_seed, std::uint64_t stream_index, std::uint64_t key);

        std::uint64_t master_seed_;
        std::uint64_t stream_index_;
        std::uint64_t key_;
        std::mt19937_64 engine_;
    };

    std::uint64_t splitmix64(std::uint64_t x) noexcept;

    // n i.i.d. CN(0, 1) samples.
    CVector sample_standard_complex_gaussian(std::size_t n, RngStream &rng);

    // One draw from CN(0, C). C must be Hermitian PSD.
    CVector correlated_gaussian_sample(const CMatrix &C, RngStream &rng);

    // L with L*L^H = C from the eigendecomposition; negative eigenvalues within
    // tolerance are clipped to zero. Works for rank-deficient C.
    CMatrix psd_sqrt(const CMatrix &C);

    // Solves A*X = B for Hermitian positive definite A via Cholesky.
    // Throws FactorizationError with the failing pivot if A is not PD.
    CMatrix hpd_solve(const CMatrix &A, const CMatrix &B);

    // Moore-Penrose pseudoinverse of a Hermitian PSD matrix. Eigenvalues below
    // 1e-12 * lambda_max are treated as zero.
    CMatrix pseudo_inverse(const CMatrix &C);

    inline constexpr double hermitian_tolerance = 1e-10;
    inline constexpr double psd_tolerance = 1e-10;
    inline constexpr double pinv_cutoff = 1e-12;

    // ||C - C^H||_F / ||C||_F; zero for the zero matrix.
    double hermitian_defect(const CMatrix &C);

    // Throws ShapeError unless C is square and Hermitian within tolerance.
    void require_hermitian(const CMatrix &C, const char *what);

    // Eigenvalues of a Hermitian matrix in ascending order.
    RVector hermitian_eigenvalues(const CMatrix &C);

    // Copy of C with off-diagonal entries zeroed.
    CMatrix diag_of(const CMatrix &C);

    // Order-fixed pairwise summation.
    double pairwise_sum(std::span<const double> values);

    // Mean and standard error of the mean (n-1 sample variance).
    struct MeanStderr
    {
        double mean = 0.0;
        double std_error = 0.0;
    };
    MeanStderr mean_and_stderr(std::span<const double> values);

    // Runs body(i) for i in [0, n) on up to `threads` workers. Every index is
    // processed exactly once; callers write results into per-index slots so the
    // outcome does not depend on scheduling. The first exception is rethrown.
    void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)> &body);

    // Worker count from MIMODIST_THREADS or hardware concurrency, at least 1.
    unsigned default_thread_count();

    inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
    inline double linear_to_db(double x) { return 10.0 * std::log10(x); }
}

#endif
