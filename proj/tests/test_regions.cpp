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
#include "chansim/regions.hpp"

#include "doctest.h"

#include <cmath>

using namespace chansim;

namespace
{
    const double lambda = speed_of_light / 5e9;
    const CavityEnvironment env = make_environment(5e9, std::pow(400 * lambda, 3), 1e7);
    const double sigma2 = 1e-4;

    struct User
    {
        ChannelSampler sampler;
        User(const ArrayGeometry &tx, double R)
            : sampler(tx, single(R), env, options())
        {
        }
        static ArrayGeometry single(double R)
        {
            ArrayGeometry rx;
            rx.positions = {Vec3(0, 0, R)};
            return rx;
        }
        static SamplerOptions options()
        {
            SamplerOptions o;
            o.blocks = PolarizationSet::SP;
            return o;
        }
        ChannelSource source() const
        {
            return [this](RandomStream &s) { return sampler.sample(s); };
        }
    };
}

TEST_CASE("silent second user collapses the region")
{
    const auto tx = build_linear_array(8, 0.4 * lambda, Vec3::UnitX());
    const User u1(tx, 3 * lambda);
    const ChannelSource zero = [&](RandomStream &)
    {
        ChannelRealization r;
        r.mask = block_mask(PolarizationSet::SP);
        r.blocks[0][0] = ComplexMatrix::Zero(1, 8);
        return r;
    };
    const auto b = two_user_region_practical(u1.source(), zero, sigma2, 50, 3);
    CHECK(b.corner_A.r2 == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(b.corner_B.r2 == 0.0);
    CHECK(b.corner_A.r1 == doctest::Approx(b.corner_B.r1).epsilon(1e-12));
    for (const auto &p : b.points)
        CHECK(std::abs(p.r2) < 1e-12);
}

TEST_CASE("practical region identities")
{
    const auto tx = build_linear_array(20, 0.4 * lambda, Vec3::UnitX());
    const User u1(tx, 3 * lambda), u2(tx, 4 * lambda);
    const auto b = two_user_region_practical(u1.source(), u2.source(), sigma2, 200, 9);
    CHECK(b.identity_residual < 1e-9);
    CHECK(b.corner_A.r1 + b.corner_A.r2 == doctest::Approx(b.sum_rate).epsilon(1e-12));
    CHECK(b.corner_B.r1 + b.corner_B.r2 == doctest::Approx(b.sum_rate).epsilon(1e-12));
    CHECK(b.points.size() == 13);
    CHECK(region_is_convex(b));
    CHECK(b.n_trials == 200);

    const auto again = two_user_region_practical(u1.source(), u2.source(), sigma2, 200, 9);
    CHECK(again.sum_rate == b.sum_rate);

    const auto wide = build_linear_array(21, 0.4 * lambda, Vec3::UnitX());
    const User u3(wide, 4 * lambda);
    CHECK_THROWS_AS(two_user_region_practical(u1.source(), u3.source(), sigma2, 10, 1), ShapeError);
    CHECK_THROWS_AS(two_user_region_practical(u1.source(), ChannelSource{}, sigma2, 10, 1), DegenerateError);
}

TEST_CASE("non-convex boundaries are rejected")
{
    RegionBoundary b;
    b.sum_rate = 3;
    b.points = {{0, 2}, {1, 2}, {1.5, 1.5}, {2, 1}, {2, 0}};
    CHECK(region_is_convex(b));
    b.points[2] = {1.1, 1.1};
    CHECK_FALSE(region_is_convex(b));
    b.points[2] = {1.6, 1.6};
    CHECK_FALSE(region_is_convex(b));
}

TEST_CASE("theoretical corners come from the single-user bounds")
{
    ScopedWarningSink quiet([](std::string_view) {});
    const MisoGeometry g{100, 0.4 * lambda};
    const auto ff = two_user_region_theoretical(RegionCase::FF_FF, 200 * lambda, 300 * lambda, g, env, sigma2, 1);
    CHECK(ff.corner_A.r1 == doctest::Approx(miso_upper_bound(200 * lambda, 100, env, sigma2)).epsilon(1e-14));
    CHECK(ff.corner_B.r2 == doctest::Approx(miso_upper_bound(300 * lambda, 100, env, sigma2)).epsilon(1e-14));
    const auto nn = two_user_region_theoretical(RegionCase::NF_NF, 3 * lambda, 4 * lambda, g, env, sigma2, 1);
    CHECK(nn.corner_A.r1 == doctest::Approx(miso_lower_bound(3 * lambda, g, env, sigma2)).epsilon(1e-14));
    CHECK(nn.corner_B.r2 == doctest::Approx(miso_lower_bound(4 * lambda, g, env, sigma2)).epsilon(1e-14));

    for (const auto &b : {ff, nn})
    {
        CHECK(b.points.size() == 5);
        CHECK(b.points[2].r1 == 0.5 * (b.corner_A.r1 + b.corner_B.r1));
        CHECK(b.points[2].r2 == 0.5 * (b.corner_A.r2 + b.corner_B.r2));
        CHECK(region_is_convex(b));
        CHECK(b.sum_rate <= b.corner_A.r1 + b.corner_B.r2);
        CHECK(b.sum_rate >= std::max(b.corner_A.r1, b.corner_B.r2));
    }
}

TEST_CASE("placement warnings follow the aperture rule")
{
    int n = 0;
    ScopedWarningSink count([&](std::string_view) { ++n; });
    const MisoGeometry g{100, 0.4 * lambda};
    two_user_region_theoretical(RegionCase::NF_FF, 3 * lambda, 200 * lambda, g, env, sigma2, 0);
    CHECK(n == 0);
    two_user_region_theoretical(RegionCase::NF_NF, 3 * lambda, 200 * lambda, g, env, sigma2, 0);
    CHECK(n == 1);
    two_user_region_theoretical(RegionCase::FF_FF, 3 * lambda, 200 * lambda, g, env, sigma2, 0);
    CHECK(n == 2);
    CHECK(parse_region_case("NF-FF") == RegionCase::NF_FF);
    CHECK(std::string(to_string(RegionCase::FF_FF)) == "FF-FF");
    CHECK_THROWS_AS(parse_region_case("near"), DomainError);
}
