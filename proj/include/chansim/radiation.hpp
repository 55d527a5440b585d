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

#ifndef CHANSIM_RADIATION_HPP
#define CHANSIM_RADIATION_HPP

#include "chansim/geometry.hpp"
#include "chansim/numerics.hpp"

namespace chansim
{
    // Aggregate radiation of the coupled transmit array towards the receiver set. Only the
    // lossless case is modelled, so G = D.
    struct RadiationReport
    {
        double U = 0.0;    // radiation intensity
        double P_av = 0.0; // average radiated power
        double G = 0.0;
        double D = 0.0;
        ComplexMatrix C_s; // transmit coupling matrix the report was computed with
    };

    // Both quadratic forms are sum_{ij} [C_s^H diag(d) C_s]_{ij}, with d_n summed over receivers m
    // of the per-pair power of polarization (p, q):
    //   radiation_intensity:    d_n = sum_m E^2[E_iso(R_mn)] + V[E_iso(R_mn)]
    //   average_radiated_power: d_n = sum_m E^2[E_iso(R_mn)]
    // where E[E_iso] is the coherent block plus the NLoS mean. C_s must be N_s x N_s.
    double radiation_intensity(const PairTable &pairs, const CavityEnvironment &env, const ComplexMatrix &C_s,
                               int p = 0, int q = 0);
    double average_radiated_power(const PairTable &pairs, const CavityEnvironment &env,
                                  const ComplexMatrix &C_s, int p = 0, int q = 0);

    struct GainDirectivity
    {
        double G = 0.0;
        double D = 0.0;
    };
    // G = D = 4 pi U / P_av. Throws DegenerateError when P_av <= 0.
    GainDirectivity directivity_gain(double U, double P_av);

    RadiationReport radiation_report(const ArrayGeometry &tx, const ArrayGeometry &rx,
                                     const CavityEnvironment &env, const ComplexMatrix &C_s,
                                     int p = 0, int q = 0);
}

#endif
