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
#include "chansim/greens.hpp"

#include "doctest.h"

#include <cmath>

using namespace chansim;

namespace
{
    const CavityEnvironment env = make_environment(5e9, 1.0, 1e3, 1.7);
}

TEST_CASE("dyadic Green's function on the z axis")
{
    const double k = env.k;
    for (double x : {0.3, 1.0, 7.5, 120.0})
    {
        const PairGeometry p{x / k, Vec3::UnitZ()};
        const auto G = dyadic_green(p, k);
        const Complex j(0, 1);
        const Complex g = std::exp(-j * x) / (4.0 * pi * p.R);
        const Complex zz = (2.0 * j / x + 2.0 / (x * x)) * g;
        const Complex xx = (1.0 - j / x - 1.0 / (x * x)) * g;
        CHECK(std::abs(G[2][2] - zz) <= 1e-13 * std::abs(zz));
        CHECK(std::abs(G[0][0] - xx) <= 1e-13 * std::abs(xx));
        CHECK(G[1][1] == G[0][0]);
        CHECK(std::abs(G[0][2]) == 0.0);
    }
    const PairGeometry far{1e6 / k, Vec3::UnitZ()};
    const auto G = dyadic_green(far, k);
    CHECK(std::abs(G[2][2]) / std::abs(G[0][0]) < 1e-5);
}

TEST_CASE("dyadic Green's function symmetry and errors")
{
    const Vec3 u = Vec3(0.3, -0.5, 0.8).normalized();
    const auto G = dyadic_green({0.11, u}, env.k);
    for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q)
            CHECK(std::abs(G[p][q] - G[q][p]) <= 1e-12 * std::abs(G[p][q]));
    CHECK_THROWS_AS(dyadic_green({0.0, u}, env.k), DegenerateError);
}

TEST_CASE("coherent block on the z axis")
{
    const double k = env.k, s = env.field_scale;
    for (double x : {0.4, 2.0, 31.0})
    {
        const double R = x / k;
        const auto E = coherent_block({R, Vec3::UnitZ()}, env);
        const double xx = s * (std::cos(x) / (4 * pi * R) - std::sin(x) / (4 * pi * k * R * R) -
                               std::cos(x) / (4 * pi * k * k * R * R * R));
        CHECK(E[0][0] == doctest::Approx(xx).epsilon(1e-12));
        CHECK(E[1][1] == E[0][0]);
    }

    // at kR = pi/2 the cosine terms vanish, leaving -s3 * k x / (4 pi) = -k / (4 pi x^2)
    const double x = pi / 2;
    const auto E = coherent_block({x / k, Vec3::UnitZ()}, env);
    const auto ker = sphere_kernels(x);
    CHECK(E[0][0] == doctest::Approx(s * k * x * (ker.s2 - ker.s3 - ker.s4) / (4 * pi)).epsilon(1e-12));
    CHECK(E[0][0] == doctest::Approx(-s * k / (4 * pi * x * x)).epsilon(1e-12));
}

TEST_CASE("coherent block is the scaled real part of the Green's function")
{
    const Vec3 dirs[] = {Vec3::UnitX(), Vec3(1, 1, 0).normalized(), Vec3(-0.2, 0.4, 0.9).normalized()};
    for (const auto &u : dirs)
        for (double R : {0.003, 0.05, 2.0})
        {
            const PairGeometry p{R, u};
            const auto G = dyadic_green(p, env.k);
            const auto E = coherent_block(p, env);
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b)
                    CHECK(std::abs(E[a][b] - env.field_scale * G[a][b].real()) <=
                          1e-12 * std::abs(G[a][b]) * env.field_scale + 1e-300);
        }
}

TEST_CASE("coherent block reciprocity")
{
    const Vec3 a(0.01, 0.02, 0.0), b(0.05, -0.03, 0.4);
    const auto ab = coherent_block(pair_geometry(a, b), env);
    const auto ba = coherent_block(pair_geometry(b, a), env);
    CHECK(ab == transpose(ba));
}

TEST_CASE("far-field transversality")
{
    const Vec3 u = Vec3(0.6, 0.0, 0.8);
    const PairGeometry p{2e3 / env.k, u};
    const auto E = coherent_block(p, env);
    Eigen::Matrix3d M;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            M(a, b) = E[a][b];
    const Eigen::Matrix3d P = Eigen::Matrix3d::Identity() - u * u.transpose();
    CHECK((M * u).norm() < 1e-2 * (P * M * P).norm());
}

TEST_CASE("kernel recomposition of the isotropic bracket")
{
    const double k = env.k;
    for (double x = 1e-3; x <= 1e4; x *= 1.37)
    {
        const double R = x / k;
        const auto br = coherent_brackets(R, k);
        const auto ker = sphere_kernels(x);
        const double via = k * x * (ker.s2 - ker.s3 - ker.s4) / (4 * pi);
        const double mag = k * (std::abs(std::cos(x) / x) + std::abs(std::sin(x) / (x * x)) +
                                std::abs(std::cos(x) / (x * x * x))) / (4 * pi);
        CHECK(std::abs(br.iso - via) <= 1e-10 * mag);
    }
}
