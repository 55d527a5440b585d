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

#ifndef CHANSIM_GREENS_HPP
#define CHANSIM_GREENS_HPP

#include "chansim/geometry.hpp"
#include "chansim/numerics.hpp"

#include <array>

namespace chansim
{
    // 3x3 tensor indexed by polarization {x, y, z} = {0, 1, 2}.
    template <typename T>
    using Tensor3 = std::array<std::array<T, 3>, 3>;
    using RealTensor = Tensor3<double>;
    using ComplexTensor = Tensor3<Complex>;

    template <typename T>
    Tensor3<T> transpose(const Tensor3<T> &a)
    {
        Tensor3<T> t{};
        for (int p = 0; p < 3; ++p)
            for (int q = 0; q < 3; ++q)
                t[p][q] = a[q][p];
        return t;
    }

    // Free-space dyadic Green's function
    //   (1 - j/kR - 1/(kR)^2) I e^{-jkR}/(4 pi R) + (3/(kR)^2 + 3j/kR - 1) RR e^{-jkR}/(4 pi R)
    ComplexTensor dyadic_green(const PairGeometry &pair, double k);

    // LoS block: field_scale * Re[dyadic_green]. The imaginary part is dropped.
    RealTensor coherent_block(const PairGeometry &pair, const CavityEnvironment &env);

    // Real parts of the two brackets times e^{-jkR}, divided by 4 pi R:
    //   iso  = ((1 - 1/x^2) cos x - sin x / x) / (4 pi R)
    //   lon  = ((3/x^2 - 1) cos x + 3 sin x / x) / (4 pi R)
    // so that Re G_pq = iso * delta_pq + lon * u_p u_q.
    struct CoherentBrackets
    {
        double iso, lon;
    };
    CoherentBrackets coherent_brackets(double R, double k);
}

#endif
