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

#ifndef CHANSIM_MOMENTS_HPP
#define CHANSIM_MOMENTS_HPP

#include "chansim/geometry.hpp"
#include "chansim/greens.hpp"
#include "chansim/numerics.hpp"

#include <cstdint>
#include <vector>

namespace chansim
{
    // Moments of one component of the incoherent kernel D at separation kR.
    struct ComponentMoments
    {
        double mean = 0.0;
        double second_moment = 0.0;
        double variance = 0.0;
    };

    // D_xx (= D_yy)
    ComponentMoments copolar_transverse_moments(double kR, double V);
    // D_zz
    ComponentMoments copolar_longitudinal_moments(double kR, double V);

    struct CrossVariances
    {
        double xy = 0.0; // D_xy, D_yx
        double xz = 0.0; // D_xz, D_yz, D_zx, D_zy
    };
    CrossVariances crosspolar_variances(double kR, double V);

    struct MomentSet
    {
        double kR = 0.0;
        RealTensor mean{};
        RealTensor second_moment{};
        RealTensor variance{};
    };
    MomentSet moment_set(double kR, double V);

    struct SpectralParams
    {
        double delta_bar = 0.0; // 2 pi^2 / (k V)
        double alpha = 0.0;     // k^3 V / (2 pi^2 Q)
        double scale = 0.0;     // pi Q / k^2
    };
    SpectralParams spectral_params(const CavityEnvironment &env);

    // Per-polarization statistics of one transmit-receive pair. All three include field_scale.
    struct ChannelMoments
    {
        RealTensor mean_los{};  // coherent block
        RealTensor mean_nlos{}; // scale * E[D]
        RealTensor variance{};  // scale^2 * V[D]
    };
    ChannelMoments channel_moment_params(const PairGeometry &pair, const CavityEnvironment &env);

    // Ratio of LoS power to NLoS power, c = E_los^2 / (E^2[NLoS] + V[NLoS]) for the co-polar
    // component (p, p). Throws DegenerateError when the NLoS power is zero.
    double kfactor_constant(const PairGeometry &pair, const CavityEnvironment &env, int p = 0);
    double kfactor_constant(const ChannelMoments &m, int p = 0);

    // Mixing weights (LoS, NLoS) = (sqrt(K/(c+K)), sqrt(c/(c+K))). K may be +inf.
    struct KWeights
    {
        double los = 1.0;
        double nlos = 1.0;
    };
    KWeights kfactor_weights(double K, double c);

    // Plane-wave Monte Carlo estimate of the kernel moments.
    //
    // ensemble:    each trial sums n_waves random plane waves into Psi(r) at r = 0 and r' = R z
    //              and records Psi_p(r) Psi_q(r').
    // single_wave: each trial draws one direction and records (1/V) f_p f_q cos(kR cos theta),
    //              the phase-averaged single-wave kernel.
    enum class OracleMode
    {
        ensemble,
        single_wave
    };

    struct OracleOptions
    {
        std::size_t n_waves = 10000;
        std::size_t n_trials = 10000;
        std::uint64_t seed = 1;
        std::uint64_t stream_base = 0;
        bool gaussian_amplitude = false;
        OracleMode mode = OracleMode::ensemble;
        std::size_t chunk_size = 200; // trials per random stream
    };

    struct OracleEstimate
    {
        double kR = 0.0;
        std::size_t n_trials = 0;
        RealTensor mean{};
        RealTensor mean_se{};
        RealTensor variance{};
        RealTensor variance_se{};
    };

    // All kR values share the same wave ensembles within a trial. Results do not depend on
    // the number of worker threads.
    std::vector<OracleEstimate> planewave_oracle(const std::vector<double> &kR, double V,
                                                 const OracleOptions &opt);
    OracleEstimate planewave_oracle(double kR, double V, std::size_t n_waves, std::size_t n_trials,
                                    const RandomStream &stream);

    // Polarization factors of a plane wave with polarization angle psi, azimuth phi and
    // elevation theta (given by its cosine).
    Vec3 planewave_polarization(double psi, double phi, double cos_theta);
}

#endif
