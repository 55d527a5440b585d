// SPDX-License-Identifier: Apache-2.0
//
// chansim: stochastic electromagnetic channel simulator for holographic MIMO
// Copyright (C) 2026 The chansim authors
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

#include "chansim/numerics.hpp"
#include "chansim/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <iostream>
#include <limits>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace chansim
{
    namespace
    {
        WarningSink &warning_sink()
        {
            static WarningSink sink = [](std::string_view msg)
            { std::cerr << "warning: " << msg << '\n'; };
            return sink;
        }

        std::mutex &warning_mutex()
        {
            static std::mutex m;
            return m;
        }

        double factorial(int n)
        {
            double f = 1.0;
            for (int i = 2; i <= n; ++i)
                f *= double(i);
            return f;
        }
    }

    void set_warning_sink(WarningSink sink)
    {
        std::lock_guard<std::mutex> lock(warning_mutex());
        warning_sink() = std::move(sink);
    }

    void warn(std::string_view message)
    {
        std::lock_guard<std::mutex> lock(warning_mutex());
        if (warning_sink())
            warning_sink()(message);
    }

    ScopedWarningSink::ScopedWarningSink(WarningSink sink)
    {
        std::lock_guard<std::mutex> lock(warning_mutex());
        previous_ = std::move(warning_sink());
        warning_sink() = std::move(sink);
    }

    ScopedWarningSink::~ScopedWarningSink()
    {
        std::lock_guard<std::mutex> lock(warning_mutex());
        warning_sink() = std::move(previous_);
    }

    bool is_hermitian(const ComplexMatrix &M, double rel_tol)
    {
        if (M.rows() != M.cols())
            return false;
        if (M.size() == 0)
            return true;
        const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
        const double dev = (M - M.adjoint()).cwiseAbs().maxCoeff();
        return dev <= rel_tol * scale;
    }

    double hermitian_logdet2(const ComplexMatrix &M)
    {
        if (!is_hermitian(M))
            throw ContractError("hermitian_logdet2: matrix is not Hermitian");
        Eigen::LLT<ComplexMatrix> llt(M);
        if (llt.info() != Eigen::Success)
            throw DomainError("hermitian_logdet2: matrix is not positive definite");
        const auto &L = llt.matrixLLT();
        double acc = 0.0;
        for (Eigen::Index i = 0; i < L.rows(); ++i)
        {
            const double d = L(i, i).real();
            if (!(d > 0.0))
                throw DomainError("hermitian_logdet2: non-positive pivot");
            acc += std::log2(d);
        }
        return 2.0 * acc;
    }

    RealVector hermitian_eigenvalues(const ComplexMatrix &M)
    {
        if (!is_hermitian(M))
            throw ContractError("hermitian_eigenvalues: matrix is not Hermitian");
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(M, Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success)
            throw DomainError("hermitian_eigenvalues: eigensolver did not converge");
        return solver.eigenvalues();
    }

    SphereKernels sphere_kernels(double x)
    {
        if (!(x >= 0.0))
            throw DomainError("sphere_kernels: x must be non-negative");
        static const KernelCombination sinc(0, 1, 0, 0, 0, 0);
        const double inf = std::numeric_limits<double>::infinity();
        if (x == 0.0)
            return {1.0, inf, inf, inf, inf};
        const double s = std::sin(x), c = std::cos(x);
        const double x2 = x * x;
        return {sinc(x), c / x2, s / (x2 * x), c / (x2 * x2), s / (x2 * x2 * x)};
    }

    KernelCombination::KernelCombination(double c0, double c1, double c2, double c3, double c4,
                                         double c5)
        : c_{c0, c1, c2, c3, c4, c5}
    {
        const double mag = std::max({std::abs(c2), std::abs(c3), std::abs(c4), std::abs(c5), 1.0});
        const double pole4 = c4 + c5;
        const double pole2 = c2 + c3 - c4 / 2.0 - c5 / 6.0;
        if (std::abs(pole4) > 1e-12 * mag || std::abs(pole2) > 1e-12 * mag)
            throw ContractError("KernelCombination: coefficients leave a pole at x = 0");

        for (int j = 0; j <= series_order / 2; ++j)
        {
            const double sgn = (j % 2 == 0) ? 1.0 : -1.0;
            double a = 0.0;
            a += c1 * sgn / factorial(2 * j + 1);
            a += c2 * (-sgn) / factorial(2 * j + 2);
            a += c3 * (-sgn) / factorial(2 * j + 3);
            a += c4 * sgn / factorial(2 * j + 4);
            a += c5 * sgn / factorial(2 * j + 5);
            series_[std::size_t(j)] = a;
        }
        series_[0] += c0;
    }

    double KernelCombination::operator()(double x) const
    {
        if (!(x >= 0.0))
            throw DomainError("KernelCombination: x must be non-negative");
        if (x < kernel_series_threshold)
        {
            const double x2 = x * x;
            double acc = 0.0;
            for (std::size_t j = series_.size(); j-- > 0;)
                acc = acc * x2 + series_[j];
            return acc;
        }
        const double s = std::sin(x), c = std::cos(x);
        const double x2 = x * x;
        const double x3 = x2 * x, x4 = x2 * x2, x5 = x4 * x;
        return c_[0] + c_[1] * s / x + c_[2] * c / x2 + c_[3] * s / x3 + c_[4] * c / x4 +
               c_[5] * s / x5;
    }

    double bessel_j0(double x)
    {
        return std::cyl_bessel_j(0.0, std::abs(x));
    }

    RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id)
        : seed_(seed), stream_id_(stream_id)
    {
        std::seed_seq seq{std::uint32_t(seed & 0xffffffffu), std::uint32_t(seed >> 32),
                          std::uint32_t(stream_id & 0xffffffffu), std::uint32_t(stream_id >> 32)};
        engine_.seed(seq);
    }

    double RandomStream::uniform()
    {
        return double(engine_() >> 11) * 0x1.0p-53;
    }

    double RandomStream::uniform(double lo, double hi)
    {
        return lo + (hi - lo) * uniform();
    }

    double RandomStream::normal()
    {
        if (has_cached_)
        {
            has_cached_ = false;
            return cached_normal_;
        }
        const double u1 = 1.0 - uniform(); // (0, 1]
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * pi * u2;
        cached_normal_ = r * std::sin(t);
        has_cached_ = true;
        return r * std::cos(t);
    }

    double RandomStream::sign()
    {
        return (engine_() >> 63) ? 1.0 : -1.0;
    }

    std::size_t worker_count()
    {
        if (const char *env = std::getenv("CHANSIM_THREADS"))
        {
            char *end = nullptr;
            const long v = std::strtol(env, &end, 10);
            if (end != env && *end == '\0' && v > 0)
                return std::size_t(v);
        }
        return std::max<std::size_t>(1, std::thread::hardware_concurrency());
    }

    void parallel_for(std::size_t n_tasks, const std::function<void(std::size_t)> &task)
    {
        const std::size_t n_workers = std::min(worker_count(), n_tasks);
        if (n_workers <= 1)
        {
            for (std::size_t i = 0; i < n_tasks; ++i)
                task(i);
            return;
        }
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        auto worker = [&]
        {
            for (;;)
            {
                const std::size_t i = next.fetch_add(1);
                if (i >= n_tasks)
                    return;
                try
                {
                    task(i);
                }
                catch (...)
                {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                    next = n_tasks;
                }
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (std::size_t w = 0; w < n_workers; ++w)
            pool.emplace_back(worker);
        for (auto &t : pool)
            t.join();
        if (failure)
            std::rethrow_exception(failure);
    }
}
