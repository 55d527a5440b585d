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

#ifndef CHANSIM_NUMERICS_HPP
#define CHANSIM_NUMERICS_HPP

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>

namespace chansim
{
    using Complex = std::complex<double>;
    using ComplexMatrix = Eigen::MatrixXcd;
    using RealMatrix = Eigen::MatrixXd;
    using RealVector = Eigen::VectorXd;

    inline constexpr double pi = 3.14159265358979323846;

    // True when M is square and ||M - M^H||_max <= rel_tol * max(1, ||M||_max)
    bool is_hermitian(const ComplexMatrix &M, double rel_tol = 1e-12);

    // log2 det(M) for Hermitian positive-definite M, i.e. the sum of log2 of the eigenvalues.
    // Evaluated through the Cholesky pivots. Throws ContractError for non-Hermitian input and
    // DomainError when M is not positive definite.
    double hermitian_logdet2(const ComplexMatrix &M);

    // Eigenvalues of a Hermitian matrix in ascending order.
    RealVector hermitian_eigenvalues(const ComplexMatrix &M);

    // Raw spherical kernels s1 = sin x/x, s2 = cos x/x^2, s3 = sin x/x^3, s4 = cos x/x^4,
    // s5 = sin x/x^5. s1 is regular at 0; s2..s5 diverge there (returned as +inf at x = 0).
    struct SphereKernels
    {
        double s1, s2, s3, s4, s5;
    };

    // Series/direct switchover used by sphere_kernels and KernelCombination.
    inline constexpr double kernel_series_threshold = 1.0;

    SphereKernels sphere_kernels(double x);

    // c0 + c1*s1(x) + c2*s2(x) + c3*s3(x) + c4*s4(x) + c5*s5(x).
    //
    // The moment formulas are combinations whose poles at x = 0 cancel. Below
    // kernel_series_threshold the combination is summed from its Taylor series (the singular
    // coefficients are checked to cancel on construction), above it the kernels are evaluated
    // directly.
    class KernelCombination
    {
    public:
        KernelCombination(double c0, double c1, double c2, double c3, double c4, double c5);

        double operator()(double x) const;

        // Limit at x -> 0
        double at_zero() const { return series_[0]; }
        // Limit at x -> infinity
        double at_infinity() const { return c_[0]; }

    private:
        static constexpr int series_order = 24; // even powers x^0 .. x^24
        std::array<double, 6> c_;
        std::array<double, series_order / 2 + 1> series_{};
    };

    // Bessel function of the first kind, order zero.
    double bessel_j0(double x);

    // Reproducible random stream. Identical (seed, stream_id) give identical sequences on every
    // platform: the engine is std::mt19937_64 seeded through std::seed_seq from the four 32-bit
    // halves of seed and stream_id, uniforms take the top 53 bits, and normals use the
    // Box-Muller transform (cosine branch first, sine branch cached for the next call).
    class RandomStream
    {
    public:
        RandomStream(std::uint64_t seed, std::uint64_t stream_id);

        double uniform();                   // [0, 1)
        double uniform(double lo, double hi);
        double normal();                    // N(0, 1)
        double sign();                      // +1 or -1 with equal probability

        std::uint64_t seed() const { return seed_; }
        std::uint64_t stream_id() const { return stream_id_; }

    private:
        std::uint64_t seed_;
        std::uint64_t stream_id_;
        std::mt19937_64 engine_;
        double cached_normal_ = 0.0;
        bool has_cached_ = false;
    };

    // Worker count: CHANSIM_THREADS when set to a positive integer, otherwise the hardware
    // concurrency (at least 1).
    std::size_t worker_count();

    // Runs task(i) for i in [0, n_tasks) on up to worker_count() threads. Tasks must write to
    // disjoint outputs; the first exception thrown by any task is rethrown.
    void parallel_for(std::size_t n_tasks, const std::function<void(std::size_t)> &task);
}

#endif
