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
#include "chansim/geometry.hpp"

#include "doctest.h"

#include <cmath>
#include <string>
#include <vector>

using namespace chansim;

TEST_CASE("environment derived quantities")
{
    const auto env = make_environment(5e9, 1.0, 1e4);
    const double lambda = speed_of_light / 5e9;
    CHECK(env.wavelength == doctest::Approx(lambda).epsilon(1e-15));
    CHECK(std::abs(env.k * lambda / (2.0 * 3.14159265358979323846) - 1.0) < 1e-12);
    CHECK(env.field_scale == 1.0);
    CHECK_THROWS_AS(make_environment(0.0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(make_environment(5e9, -1.0, 1.0), DomainError);
    CHECK_THROWS_AS(make_environment(5e9, 1.0, 0.0), DomainError);
}

TEST_CASE("linear arrays")
{
    const double lambda = speed_of_light / 5e9;
    const auto one = build_linear_array(1, 0.4 * lambda, Vec3::UnitX(), Vec3(1, 2, 3));
    REQUIRE(one.size() == 1);
    CHECK(one.positions[0] == Vec3(1, 2, 3));

    const auto a = build_linear_array(100, 0.4 * lambda, Vec3::UnitX());
    CHECK((a.positions.back() - a.positions.front()).norm() / lambda == doctest::Approx(39.6));

    const double d = 0.7;
    const auto b = build_linear_array(3, d, Vec3(0, 2, 0));
    CHECK((b.positions[1] - b.positions[0]).norm() == doctest::Approx(d));
    CHECK((b.positions[2] - b.positions[1]).norm() == doctest::Approx(d));
    CHECK((b.positions[2] - b.positions[0]).norm() == doctest::Approx(2 * d));
    CHECK(std::abs(b.normal.dot(Vec3::UnitY())) < 1e-12);

    CHECK_THROWS_AS(build_linear_array(0, d, Vec3::UnitX()), DegenerateError);
    CHECK_THROWS_AS(build_linear_array(2, 0.0, Vec3::UnitX()), DomainError);
}

TEST_CASE("planar arrays")
{
    const double s = 0.4;
    const auto tx = build_planar_array(6, 6, s);
    CHECK(tx.size() == 36);
    CHECK(build_planar_array(4, 4, s).size() == 16);
    CHECK(build_planar_array(1, 1, s, Vec3(0, 0, 5)).positions[0] == Vec3(0, 0, 5));

    // centred, row-major, in the plane orthogonal to the normal
    Vec3 c = Vec3::Zero();
    for (const auto &p : tx.positions)
    {
        c += p;
        CHECK(std::abs(p.z()) < 1e-15);
    }
    CHECK(c.norm() < 1e-12);
    CHECK(tx.positions[1].x() - tx.positions[0].x() == doctest::Approx(s));
    CHECK(tx.positions[6].y() - tx.positions[0].y() == doctest::Approx(s));
    CHECK(min_element_spacing(tx) == doctest::Approx(s));

    const auto tilted = build_planar_array(3, 2, s, Vec3::Zero(), Vec3(1, 0, 0));
    for (const auto &p : tilted.positions)
        CHECK(std::abs(p.x()) < 1e-15);

    CHECK_THROWS_AS(build_planar_array(0, 3, s), DegenerateError);
}

TEST_CASE("pairwise geometry")
{
    const double R = 3.0;
    ArrayGeometry tx, rx;
    tx.positions = {Vec3::Zero()};
    rx.positions = {Vec3(0, 0, R)};
    const auto t = pairwise_geometry(tx, rx);
    CHECK(t(0, 0).R == doctest::Approx(R));
    CHECK(t(0, 0).direction.z() == doctest::Approx(1.0));
    CHECK(t(0, 0).direction.x() == 0.0);
    CHECK(t(0, 0).direction.y() == 0.0);

    const double d = 0.05;
    const auto lin = build_linear_array(10, d, Vec3::UnitX());
    const auto lt = pairwise_geometry(lin, rx);
    for (std::size_t n = 0; n < 10; ++n)
    {
        CHECK(lt(0, n).R == doctest::Approx(std::sqrt(R * R + double(n * n) * d * d)).epsilon(1e-14));
        CHECK(lt(0, n).direction.squaredNorm() == doctest::Approx(1.0).epsilon(1e-12));
    }

    // swapping roles keeps distances and flips direction cosines
    const auto a = build_planar_array(2, 3, 0.3, Vec3(0.1, 0, 0));
    const auto b = build_planar_array(3, 1, 0.2, Vec3(0, 0.5, 2.0));
    const auto ab = pairwise_geometry(a, b), ba = pairwise_geometry(b, a);
    for (std::size_t m = 0; m < b.size(); ++m)
        for (std::size_t n = 0; n < a.size(); ++n)
        {
            CHECK(ab(m, n).R == ba(n, m).R);
            CHECK(ab(m, n).direction == -ba(n, m).direction);
        }

    CHECK_THROWS_AS(pairwise_geometry(tx, tx), DegenerateError);
}

TEST_CASE("minimum scatterer rule")
{
    const double lambda = 0.06;
    const auto ok = build_planar_array(6, 6, 0.4 * lambda);
    CHECK_NOTHROW(check_min_scatterer(ok, lambda, true));
    CHECK_NOTHROW(check_min_scatterer(build_linear_array(4, 0.25 * lambda, Vec3::UnitX()), lambda, true));

    const auto tight = build_linear_array(4, 0.1 * lambda, Vec3::UnitX());
    CHECK_THROWS_AS(check_min_scatterer(tight, lambda, true), DomainError);

    std::vector<std::string> warnings;
    ScopedWarningSink sink([&](std::string_view m) { warnings.emplace_back(m); });
    CHECK_NOTHROW(check_min_scatterer(tight, lambda, false));
    CHECK(warnings.size() == 1);

    ArrayGeometry dup;
    dup.positions = {Vec3::Zero(), Vec3::Zero()};
    CHECK_THROWS_AS(check_min_scatterer(dup, lambda, false), DegenerateError);
}
