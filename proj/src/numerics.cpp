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

#include "mimodist/numerics.hpp"
#include "mimodist/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numbers>
#include <string>
#include <thread>

namespace mimodist
{
    std::uint64_t splitmix64(std::uint64_t x) noexcept
    {
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    static std::uint64_t mix_key(std::uint64_t parent, std::uint64_t index) noexcept
    {
        return splitmix64(parent ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
    }

    RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
        : RngStream(master_seed, stream_index, mix_key(splitmix64(master_seed), stream_index))
    {
    }

    RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index, std::uint64_t key)
        : master_seed_(master_seed), stream_index_(stream_index), key_(key), engine_(key)
    {
    }

    RngStream RngStream::substream(std::uint64_t index) const
    {
        return RngStream(master_seed_, stream_index_, mix_key(key_, index));
    }

    double RngStream::uniform()
    {
        // 53 random mantissa bits, shifted so 0 is excluded and 1 is included.
        return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
    }

    cd RngStream::complex_gaussian()
    {
        const double radius = std::sqrt(-std::log(uniform()));
        const double angle = 2.0 * std::numbers::pi * uniform();
        return {radius * std::cos(angle), radius * std::sin(angle)};
    }

    CVector sample_standard_complex_gaussian(std::size_t n, RngStream &rng)
    {
        if (n == 0)
            throw EmptyDimensionError("sample_standard_complex_gaussian: n must be at least 1");
        CVector w(static_cast<Eigen::Index>(n));
        for (Eigen::Index i = 0; i < w.size(); ++i)
            w[i] = rng.complex_gaussian();
        return w;
    }

    double hermitian_defect(const CMatrix &C)
    {
        const double scale = C.norm();
        if (scale == 0.0)
            return 0.0;
        return (C - C.adjoint()).norm() / scale;
    }

    void require_hermitian(const CMatrix &C, const char *what)
    {
        if (C.rows() != C.cols())
            throw ShapeError(std::string(what) + ": matrix is " + std::to_string(C.rows()) + "x" +
                             std::to_string(C.cols()) + ", expected square");
        if (C.size() == 0)
            throw EmptyDimensionError(std::string(what) + ": empty matrix");
        if (!C.allFinite())
            throw ShapeError(std::string(what) + ": matrix has non-finite entries");
        if (hermitian_defect(C) > hermitian_tolerance)
            throw ShapeError(std::string(what) + ": matrix is not Hermitian");
    }

    RVector hermitian_eigenvalues(const CMatrix &C)
    {
        require_hermitian(C, "hermitian_eigenvalues");
        Eigen::SelfAdjointEigenSolver<CMatrix> es(C, Eigen::EigenvaluesOnly);
        return es.eigenvalues();
    }

    CMatrix psd_sqrt(const CMatrix &C)
    {
        require_hermitian(C, "psd_sqrt");
        Eigen::SelfAdjointEigenSolver<CMatrix> es(C);
        if (es.info() != Eigen::Success)
            throw NumericalError("psd_sqrt: eigendecomposition did not converge");
        const RVector &lambda = es.eigenvalues();
        const double lambda_max = std::max(std::abs(lambda.minCoeff()), std::abs(lambda.maxCoeff()));
        if (lambda.minCoeff() < -psd_tolerance * lambda_max)
            throw NotPsdError("psd_sqrt: matrix has eigenvalue " + std::to_string(lambda.minCoeff()) +
                              " below tolerance");
        const RVector root = lambda.cwiseMax(0.0).cwiseSqrt();
        return es.eigenvectors() * root.asDiagonal();
    }

    CVector correlated_gaussian_sample(const CMatrix &C, RngStream &rng)
    {
        const CMatrix L = psd_sqrt(C);
        return L * sample_standard_complex_gaussian(static_cast<std::size_t>(C.rows()), rng);
    }

    // Unblocked Cholesky used only to locate the pivot where factorization breaks.
    static std::size_t failing_pivot(const CMatrix &A)
    {
        const Eigen::Index n = A.rows();
        CMatrix L = CMatrix::Zero(n, n);
        for (Eigen::Index j = 0; j < n; ++j)
        {
            double diag = A(j, j).real();
            for (Eigen::Index k = 0; k < j; ++k)
                diag -= std::norm(L(j, k));
            if (!(diag > 0.0) || !std::isfinite(diag))
                return static_cast<std::size_t>(j);
            L(j, j) = std::sqrt(diag);
            for (Eigen::Index i = j + 1; i < n; ++i)
            {
                cd s = A(i, j);
                for (Eigen::Index k = 0; k < j; ++k)
                    s -= L(i, k) * std::conj(L(j, k));
                L(i, j) = s / L(j, j);
            }
        }
        return static_cast<std::size_t>(n);
    }

    CMatrix hpd_solve(const CMatrix &A, const CMatrix &B)
    {
        require_hermitian(A, "hpd_solve");
        if (B.rows() != A.rows())
            throw ShapeError("hpd_solve: right-hand side has " + std::to_string(B.rows()) + " rows, expected " +
                             std::to_string(A.rows()));
        Eigen::LLT<CMatrix> llt(A);
        if (llt.info() != Eigen::Success)
            throw FactorizationError("hpd_solve: matrix is not positive definite", failing_pivot(A));
        CMatrix X = llt.solve(B);
        if (!X.allFinite())
            throw FactorizationError("hpd_solve: non-finite solution", failing_pivot(A));
        return X;
    }

    CMatrix pseudo_inverse(const CMatrix &C)
    {
        require_hermitian(C, "pseudo_inverse");
        Eigen::SelfAdjointEigenSolver<CMatrix> es(C);
        if (es.info() != Eigen::Success)
            throw NumericalError("pseudo_inverse: eigendecomposition did not converge");
        const RVector &lambda = es.eigenvalues();
        const double lambda_max = lambda.cwiseAbs().maxCoeff();
        RVector inv = RVector::Zero(lambda.size());
        for (Eigen::Index i = 0; i < lambda.size(); ++i)
            if (lambda[i] > pinv_cutoff * lambda_max)
                inv[i] = 1.0 / lambda[i];
        const CMatrix &U = es.eigenvectors();
        return U * inv.asDiagonal() * U.adjoint();
    }

    CMatrix diag_of(const CMatrix &C)
    {
        if (C.rows() != C.cols())
            throw ShapeError("diag_of: matrix must be square");
        CMatrix out = CMatrix::Zero(C.rows(), C.cols());
        out.diagonal() = C.diagonal();
        return out;
    }

    double pairwise_sum(std::span<const double> values)
    {
        if (values.size() <= 8)
        {
            double s = 0.0;
            for (double v : values)
                s += v;
            return s;
        }
        const std::size_t half = values.size() / 2;
        return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
    }

    MeanStderr mean_and_stderr(std::span<const double> values)
    {
        MeanStderr out;
        const std::size_t n = values.size();
        if (n == 0)
            return out;
        out.mean = pairwise_sum(values) / static_cast<double>(n);
        if (n < 2)
            return out;
        std::vector<double> sq(n);
        for (std::size_t i = 0; i < n; ++i)
            sq[i] = (values[i] - out.mean) * (values[i] - out.mean);
        const double var = pairwise_sum(sq) / static_cast<double>(n - 1);
        out.std_error = std::sqrt(var / static_cast<double>(n));
        return out;
    }

    void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)> &body)
    {
        const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), n));
        if (workers <= 1)
        {
            for (std::size_t i = 0; i < n; ++i)
                body(i);
            return;
        }

        std::atomic<std::size_t> next{0};
        std::atomic<bool> failed{false};
        std::exception_ptr first_error;
        std::mutex error_mutex;

        auto worker = [&]
        {
            while (!failed.load(std::memory_order_relaxed))
            {
                const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
                if (i >= n)
                    return;
                try
                {
                    body(i);
                }
                catch (...)
                {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error)
                        first_error = std::current_exception();
                    failed.store(true);
                }
            }
        };

        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned t = 0; t < workers; ++t)
            pool.emplace_back(worker);
        for (auto &t : pool)
            t.join();
        if (first_error)
            std::rethrow_exception(first_error);
    }

    unsigned default_thread_count()
    {
        if (const char *env = std::getenv("MIMODIST_THREADS"))
        {
            char *end = nullptr;
            const long v = std::strtol(env, &end, 10);
            if (end != env && *end == '\0' && v >= 1)
                return static_cast<unsigned>(v);
        }
        return std::max(1u, std::thread::hardware_concurrency());
    }
}
