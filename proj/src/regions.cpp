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

#include "chansim/regions.hpp"
#include "chansim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <tuple>

namespace chansim
{
    namespace
    {
        RegionBoundary assemble(double C1, double C2, double S, std::size_t n_timeshare)
        {
            RegionBoundary b;
            b.sum_rate = S;
            b.corner_A = {C1, S - C1};
            b.corner_B = {S - C2, C2};
            b.points.push_back({0.0, C2});
            b.points.push_back(b.corner_B);
            for (std::size_t i = 1; i <= n_timeshare; ++i)
            {
                // eps runs from near 0 (at B) to near 1 (at A)
                const double eps = double(i) / double(n_timeshare + 1);
                b.points.push_back({eps * b.corner_A.r1 + (1 - eps) * b.corner_B.r1,
                                    eps * b.corner_A.r2 + (1 - eps) * b.corner_B.r2});
            }
            b.points.push_back(b.corner_A);
            b.points.push_back({C1, 0.0});
            return b;
        }
    }

    RegionBoundary two_user_region_practical(const ChannelSource &user1, const ChannelSource &user2, double sigma2,
                                             std::size_t n_trials, std::size_t n_timeshare, std::uint64_t seed,
                                             PolarizationSet set)
    {
        if (!user1 || !user2)
            throw DegenerateError("two_user_region: missing channel source (no data)");
        if (!(sigma2 > 0.0))
            throw DomainError("two_user_region: noise variance must be positive");
        if (n_trials == 0)
            throw ContractError("two_user_region: need at least one trial");

        std::vector<std::array<double, 4>> r(n_trials);
        parallel_for(n_trials, [&](std::size_t t)
        {
            RandomStream s1(seed, 2 * t), s2(seed, 2 * t + 1);
            const ComplexMatrix H1 = stacked_channel(user1(s1), set);
            const ComplexMatrix H2 = stacked_channel(user2(s2), set);
            if (H1.cols() != H2.cols())
                throw ShapeError("two_user_region: users see different transmit dimensions");
            ComplexMatrix H(H1.rows() + H2.rows(), H1.cols());
            H << H1, H2;
            const double c1 = capacity_bits(H1, sigma2);
            const double c2 = capacity_bits(H2, sigma2);
            const double s = capacity_bits(H, sigma2);
            // user 2 decoded with user 1 as coloured noise
            ComplexMatrix W = H1.adjoint() * H1;
            W.diagonal().array() += sigma2;
            ComplexMatrix M = H2 * W.llt().solve(H2.adjoint());
            M.diagonal().array() += 1.0;
            M = (0.5 * (M + M.adjoint())).eval();
            const double r2a = hermitian_logdet2(M);
            r[t] = {c1, c2, s, std::abs(c1 + r2a - s)};
        });

        double C1 = 0, C2 = 0, S = 0, dev = 0;
        for (const auto &v : r)
        {
            C1 += v[0];
            C2 += v[1];
            S += v[2];
            dev = std::max(dev, v[3]);
        }
        const double n = double(n_trials);
        auto b = assemble(C1 / n, C2 / n, S / n, n_timeshare);
        b.identity_residual = dev;
        b.n_trials = n_trials;
        return b;
    }

    const char *to_string(RegionCase c)
    {
        switch (c)
        {
        case RegionCase::NF_NF:
            return "NF-NF";
        case RegionCase::NF_FF:
            return "NF-FF";
        case RegionCase::FF_FF:
            return "FF-FF";
        }
        return "?";
    }

    RegionCase parse_region_case(const std::string &s)
    {
        if (s == "NF-NF")
            return RegionCase::NF_NF;
        if (s == "NF-FF")
            return RegionCase::NF_FF;
        if (s == "FF-FF")
            return RegionCase::FF_FF;
        throw DomainError("unknown region case '" + s + "' (expected NF-NF, NF-FF or FF-FF)");
    }

    RegionBoundary two_user_region_theoretical(RegionCase c, double R1, double R2, const MisoGeometry &g,
                                               const CavityEnvironment &env, double sigma2,
                                               std::size_t n_timeshare)
    {
        if (!(sigma2 > 0.0))
            throw DomainError("two_user_region: noise variance must be positive");
        if (g.n_elements == 0)
            throw DegenerateError("two_user_region: no transmit elements");
        const bool near1 = c != RegionCase::FF_FF;
        const bool near2 = c == RegionCase::NF_NF;
        const double aperture = double(g.n_elements - 1) * g.spacing;
        for (auto [R, near, name] : {std::tuple{R1, near1, "user 1"}, std::tuple{R2, near2, "user 2"}})
        {
            if ((R <= aperture) != near)
            {
                std::ostringstream os;
                os << "two_user_region: " << name << " at R = " << R / env.wavelength << " lambda is "
                   << (near ? "declared near but lies beyond" : "declared far but lies within")
                   << " the aperture " << aperture / env.wavelength << " lambda";
                warn(os.str());
            }
        }

        const double k = env.k;
        auto far_mean = [&](double R)
        {
            const double x = k * R;
            return env.field_scale *
                   (std::cos(x) / (4 * pi * R) + pi * env.quality / (2 * env.volume * k * k) * std::sin(x) / x);
        };
        auto user = [&](double R, bool near, std::vector<double> &mu)
        {
            mu.resize(g.n_elements);
            if (!near)
            {
                std::fill(mu.begin(), mu.end(), far_mean(R));
                return double(g.n_elements) * farfield_element_power(R, env);
            }
            double p = 0.0;
            for (std::size_t n = 1; n <= g.n_elements; ++n)
            {
                const auto m = miso_case1_moments(R, n, g.spacing, env);
                mu[n - 1] = m.mean;
                p += m.mean * m.mean + m.variance;
            }
            return p;
        };
        std::vector<double> mu1, mu2;
        const double P1 = user(R1, near1, mu1);
        const double P2 = user(R2, near2, mu2);
        double G = 0.0;
        for (std::size_t n = 0; n < g.n_elements; ++n)
            G += mu1[n] * mu2[n];
        const double a = P1 / sigma2, b = P2 / sigma2, gg = G / sigma2;
        const double S = std::log2((1 + a) * (1 + b) - gg * gg);
        return assemble(std::log2(1 + a), std::log2(1 + b), S, n_timeshare);
    }

    bool region_is_convex(const RegionBoundary &b, double tol)
    {
        if (b.points.size() < 2)
            return false;
        const double C1 = b.points.back().r1;
        const double C2 = b.points.front().r2;
        for (const auto &p : b.points)
        {
            if (p.r1 < -tol || p.r2 < -tol || p.r1 > C1 + tol || p.r2 > C2 + tol ||
                p.r1 + p.r2 > b.sum_rate + tol)
                return false;
        }
        for (std::size_t i = 1; i + 1 < b.points.size(); ++i)
        {
            const auto &p = b.points[i - 1], &q = b.points[i], &s = b.points[i + 1];
            const double cross = (q.r1 - p.r1) * (s.r2 - q.r2) - (q.r2 - p.r2) * (s.r1 - q.r1);
            if (cross > tol)
                return false;
        }
        return true;
    }
}
