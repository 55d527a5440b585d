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

#include "chansim/greens.hpp"
#include "chansim/errors.hpp"

#include <cmath>

namespace chansim
{
    ComplexTensor dyadic_green(const PairGeometry &pair, double k)
    {
        if (!(pair.R > 0.0))
            throw DegenerateError("dyadic_green: R must be positive");
        const double x = k * pair.R;
        const Complex j(0.0, 1.0);
        const Complex g = std::exp(-j * x) / (4.0 * pi * pair.R);
        const Complex a = (1.0 - j / x - 1.0 / (x * x)) * g;
        const Complex b = (3.0 / (x * x) + 3.0 * j / x - 1.0) * g;

        ComplexTensor G{};
        const Vec3 &u = pair.direction;
        for (int p = 0; p < 3; ++p)
            for (int q = 0; q < 3; ++q)
                G[p][q] = b * (u[p] * u[q]) + (p == q ? a : Complex(0.0));
        return G;
    }

    CoherentBrackets coherent_brackets(double R, double k)
    {
        if (!(R > 0.0))
            throw DegenerateError("coherent_block: R must be positive");
        const double x = k * R;
        const double c = std::cos(x), s = std::sin(x);
        const double x2 = x * x;
        const double norm = 1.0 / (4.0 * pi * R);
        return {((1.0 - 1.0 / x2) * c - s / x) * norm, ((3.0 / x2 - 1.0) * c + 3.0 * s / x) * norm};
    }

    RealTensor coherent_block(const PairGeometry &pair, const CavityEnvironment &env)
    {
        const auto br = coherent_brackets(pair.R, env.k);
        const Vec3 &u = pair.direction;
        RealTensor E{};
        for (int p = 0; p < 3; ++p)
            for (int q = 0; q < 3; ++q)
                E[p][q] = env.field_scale * (br.lon * u[p] * u[q] + (p == q ? br.iso : 0.0));
        return E;
    }
}
