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

#ifndef CHANSIM_REGIONS_HPP
#define CHANSIM_REGIONS_HPP

#include "chansim/capacity.hpp"

#include <string>
#include <vector>

namespace chansim
{
    struct RatePair
    {
        double r1 = 0.0;
        double r2 = 0.0;
    };

    // Boundary of a two-user region, ordered by increasing r1:
    // (0, C2), B, time-sharing points, A, (C1, 0).
    struct RegionBoundary
    {
        std::vector<RatePair> points;
        RatePair corner_A; // user 1 at its single-user rate
        RatePair corner_B; // user 2 at its single-user rate
        double sum_rate = 0.0;
        double identity_residual = 0.0; // max per-trial |C1 + R2(A) - S| (practical only)
        std::size_t n_trials = 0;
    };

    // Corner rates with identity input covariance. Per trial:
    //   C_i = log2|I + H_i^H H_i / sigma2|, S = log2|I + (H_1^H H_1 + H_2^H H_2) / sigma2|,
    // and the SIC rate of user 2 given user 1 is checked against S - C1 via the MMSE form.
    RegionBoundary two_user_region_practical(const ChannelSource &user1, const ChannelSource &user2, double sigma2,
                                             std::size_t n_trials, std::size_t n_timeshare,
                                             std::uint64_t seed = 1,
                                             PolarizationSet set = PolarizationSet::SP);

    enum class RegionCase
    {
        NF_NF,
        NF_FF,
        FF_FF
    };

    const char *to_string(RegionCase c);
    RegionCase parse_region_case(const std::string &s);

    // Near users use the Case-1 moments, far users the Case-2 per-element power with a uniform
    // mean across the array. With P_i the received power and G = sum_n mean_1n mean_2n,
    //   S = log2((1 + P1/sigma2)(1 + P2/sigma2) - G^2/sigma2^2).
    // Warns when a placement disagrees with the declared case (near means R <= aperture).
    RegionBoundary two_user_region_theoretical(RegionCase c, double R1, double R2, const MisoGeometry &g,
                                               const CavityEnvironment &env, double sigma2,
                                               std::size_t n_timeshare);

    // Every point inside the pentagon spanned by the axes, the intercepts and the corners, and
    // the listed boundary turning clockwise only.
    bool region_is_convex(const RegionBoundary &b, double tol = 1e-9);
}

#endif
