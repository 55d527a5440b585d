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

#include "chansim/errors.hpp"
#include "chansim/numerics.hpp"

#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <vector>

using namespace chansim;

namespace
{
    ComplexMatrix random_matrix(RandomStream &rng, int rows, int cols)
    {
        ComplexMatrix A(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                A(i, j) = Complex(rng.normal(), rng.normal());
        return A;
    }

    double eigen_sum_log2(const ComplexMatrix &M)
    {
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(M);
        return es.eigenvalues().array().log().sum() / std::log(2.0);
    }
}

TEST_CASE("logdet of simple matrices")
{
    CHECK(hermitian_logdet2(ComplexMatrix::Identity(4, 4)) == doctest::Approx(0.0));
    ComplexMatrix D = ComplexMatrix::Zero(2, 2);
    D(0, 0) = 2.0;
    D(1, 1) = 2.0;
    CHECK(hermitian_logdet2(D) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("logdet matches eigenvalue sum and LU pivots")
{
    RandomStream rng(42, 0);
    for (int rep = 0; rep < 5; ++rep)
    {
        ComplexMatrix A = random_matrix(rng, 8, 8);
        ComplexMatrix M = A.adjoint() * A + ComplexMatrix::Identity(8, 8);
        const double ld = hermitian_logdet2(M);
        CHECK(std::abs(ld - eigen_sum_log2(M)) <= 1e-9 * std::abs(ld));

        Eigen::PartialPivLU<ComplexMatrix> lu(M);
        const double pivots = std::log2(std::abs(lu.determinant()));
        CHECK(std::abs(ld - pivots) <= 1e-9 * std::abs(ld));
    }
}

TEST_CASE("logdet of a square is twice the logdet")
{
    RandomStream rng(7, 3);
    for (int rep = 0; rep < 5; ++rep)
    {
        ComplexMatrix B = random_matrix(rng, 6, 6);
        ComplexMatrix A = B.adjoint() * B + 0.5 * ComplexMatrix::Identity(6, 6);
        ComplexMatrix M = A * A;
        M = 0.5 * (M + M.adjoint()).eval();
        CHECK(hermitian_logdet2(M) == doctest::Approx(2.0 * hermitian_logdet2(A)).epsilon(1e-8));
    }
}

TEST_CASE("logdet errors")
{
    ComplexMatrix N(2, 2);
    N << 1.0, 2.0, 0.0, 1.0;
    CHECK_THROWS_AS(hermitian_logdet2(N), ContractError);
    ComplexMatrix I = -ComplexMatrix::Identity(3, 3);
    CHECK_THROWS_AS(hermitian_logdet2(I), DomainError);
    ComplexMatrix S(2, 2);
    S << 1.0, 2.0, 2.0, 1.0; // eigenvalues 3, -1
    CHECK_THROWS_AS(hermitian_logdet2(S), DomainError);
}

TEST_CASE("hermitian eigenvalues ascending")
{
    ComplexMatrix M(2, 2);
    M << 2.0, Complex(0, 1), Complex(0, -1), 2.0;
    const RealVector ev = hermitian_eigenvalues(M);
    CHECK(ev(0) == doctest::Approx(1.0));
    CHECK(ev(1) == doctest::Approx(3.0));
}

TEST_CASE("sphere kernels")
{
    CHECK(sphere_kernels(0.0).s1 == 1.0);
    CHECK(std::isinf(sphere_kernels(0.0).s2));
    CHECK(sphere_kernels(1e-9).s1 == doctest::Approx(1.0));

    const auto k = sphere_kernels(pi);
    CHECK(std::abs(k.s1) < 1e-15);
    CHECK(k.s2 == doctest::Approx(-1.0 / (pi * pi)).epsilon(1e-14));
    CHECK(std::abs(sphere_kernels(100.0).s1) <= 0.01);
    CHECK_THROWS_AS(sphere_kernels(-1e-3), DomainError);

    const KernelCombination s2_minus_s3(0, 0, 1, -1, 0, 0);
    CHECK(s2_minus_s3.at_zero() == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
    CHECK(s2_minus_s3(0.0) == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
    CHECK(s2_minus_s3(1e-4) == doctest::Approx(-1.0 / 3.0).epsilon(1e-8));
    const auto k5 = sphere_kernels(5.0);
    CHECK(s2_minus_s3(5.0) == doctest::Approx(k5.s2 - k5.s3).epsilon(1e-15));
}

TEST_CASE("kernel combinations against high-precision values")
{
    // reference values evaluated with 40-digit arithmetic
    const KernelCombination zz(8.0 / 15.0, 0, 0, -8, -24, 24);
    const KernelCombination xy(64.0 / 15.0, 8, 16, -40, -72, 72);
    const KernelCombination xz(4.0 / 15.0, 0, -2, 8, 18, -18);
    struct Row
    {
        double x, zz, xy, xz;
    };
    const Row rows[] = {
        {0.01, 1.0666628571534391374, 8.5332419052698399872, 0.53332952382539679333},
        {0.3, 1.0632466549884637972, 8.451458113766879787, 0.52991759569626468636},
        {0.7, 1.0482521966250022608, 8.097379045914741804, 0.51504402729441150335},
        {0.999, 1.0296857700870800675, 7.6702092484808213155, 0.49686371404775422625},
        {2.5, 0.86621874707913203075, 4.51667063767412178, 0.34997299777764286359},
    };
    for (const auto &r : rows)
    {
        CHECK(zz(r.x) == doctest::Approx(r.zz).epsilon(1e-12));
        CHECK(xy(r.x) == doctest::Approx(r.xy).epsilon(1e-12));
        CHECK(xz(r.x) == doctest::Approx(r.xz).epsilon(1e-12));
    }
    CHECK(zz.at_zero() == doctest::Approx(16.0 / 15.0).epsilon(1e-15));
    CHECK(xy.at_zero() == doctest::Approx(128.0 / 15.0).epsilon(1e-15));
    CHECK(xz.at_zero() == doctest::Approx(8.0 / 15.0).epsilon(1e-15));
    CHECK(zz.at_infinity() == doctest::Approx(8.0 / 15.0));
}

TEST_CASE("kernel combinations are continuous at the switchover")
{
    const KernelCombination combos[] = {
        {0, 1, 1, -1, 0, 0},
        {4.0 / 3.0, 2, 2, -2, 0, 0},
        {0, 0, -1, 1, 0, 0},
        {8.0 / 15.0, 0, 0, -8, -24, 24},
        {64.0 / 15.0, 8, 16, -40, -72, 72},
        {4.0 / 15.0, 0, -2, 8, 18, -18},
    };
    const double t = kernel_series_threshold;
    for (const auto &c : combos)
        CHECK(std::abs(c(std::nextafter(t, 0.0)) - c(t)) < 1e-10);
}

TEST_CASE("kernel combination rejects a pole")
{
    CHECK_THROWS_AS(KernelCombination(0, 0, 1, 0, 0, 0), ContractError);
    CHECK_THROWS_AS(KernelCombination(0, 0, 0, 0, 1, 0), ContractError);
    CHECK_THROWS_AS(KernelCombination(0, 1, 0, 0, 0, 0)(-1.0), DomainError);
}

TEST_CASE("bessel J0")
{
    CHECK(bessel_j0(0.0) == 1.0);
    CHECK(std::abs(bessel_j0(2.404825557695773)) < 1e-6);
    CHECK(bessel_j0(-3.0) == bessel_j0(3.0));

    // J0(x) = (1/pi) int_0^pi cos(x sin t) dt; the trapezoid rule is spectrally accurate here
    auto quad = [](double x)
    {
        const int n = 400;
        double s = 0.5 * (1.0 + std::cos(x * std::sin(pi)));
        for (int i = 1; i < n; ++i)
            s += std::cos(x * std::sin(pi * i / n));
        return s / n;
    };
    for (double x : {0.5, 2.0, 5.0, 12.3})
        CHECK(std::abs(bessel_j0(x) - quad(x)) <= 1e-10);
    CHECK(std::abs(bessel_j0(5.0) - (-0.17759677131433830435)) <= 1e-12);
}

TEST_CASE("random stream reproducibility")
{
    RandomStream a(123, 9), b(123, 9);
    bool equal = true;
    for (int i = 0; i < 10000; ++i)
    {
        const double x = (i % 3 == 0) ? a.normal() : a.uniform();
        const double y = (i % 3 == 0) ? b.normal() : b.uniform();
        equal = equal && (x == y);
    }
    CHECK(equal);
    CHECK(a.seed() == 123);
    CHECK(a.stream_id() == 9);
}

TEST_CASE("random streams are independent and well distributed")
{
    const int n = 20000;
    RandomStream a(5, 0), b(5, 1);
    double sab = 0, sa = 0, sb = 0, saa = 0, sbb = 0;
    double un = 0, nsum = 0, nsq = 0, signs = 0;
    RandomStream c(5, 2);
    for (int i = 0; i < n; ++i)
    {
        const double x = a.normal(), y = b.normal();
        sab += x * y;
        sa += x;
        sb += y;
        saa += x * x;
        sbb += y * y;
        const double u = c.uniform();
        CHECK_MESSAGE((u >= 0.0 && u < 1.0), "uniform out of range");
        un += u;
        signs += c.sign();
    }
    const double r = (sab / n - sa / n * sb / n) /
                     std::sqrt((saa / n - sa * sa / n / n) * (sbb / n - sb * sb / n / n));
    CHECK(std::abs(r) < 4.0 / std::sqrt(double(n)));
    nsum = sa / n;
    nsq = saa / n;
    CHECK(std::abs(nsum) < 4.0 / std::sqrt(double(n)));
    CHECK(std::abs(nsq - 1.0) < 4.0 * std::sqrt(2.0 / n));
    CHECK(std::abs(un / n - 0.5) < 4.0 * std::sqrt(1.0 / 12.0 / n));
    CHECK(std::abs(signs / n) < 4.0 / std::sqrt(double(n)));
}

TEST_CASE("parallel_for covers every task and rethrows")
{
    setenv("CHANSIM_THREADS", "3", 1);
    CHECK(worker_count() == 3);
    std::vector<int> hit(100, 0);
    parallel_for(hit.size(), [&](std::size_t i) { hit[i] += 1; });
    bool all = true;
    for (int h : hit)
        all = all && h == 1;
    CHECK(all);
    CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) { if (i == 4) throw DomainError("boom"); }),
                    DomainError);
    unsetenv("CHANSIM_THREADS");
}

TEST_CASE("warning sink is scoped")
{
    std::vector<std::string> got;
    {
        ScopedWarningSink s([&](std::string_view m) { got.emplace_back(m); });
        warn("one");
    }
    CHECK(got.size() == 1);
    CHECK(got[0] == "one");
}
