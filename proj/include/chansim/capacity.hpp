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

#ifndef CHANSIM_CAPACITY_HPP
#define CHANSIM_CAPACITY_HPP

#include "chansim/channel.hpp"
#include "chansim/geometry.hpp"
#include "chansim/numerics.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace chansim
{
    struct CapacityEstimate
    {
        double mean_bits = 0.0;
        double half_width_95 = 0.0; // 1.96 * sd / sqrt(n)
        double std_dev = 0.0;
        std::size_t n_trials = 0;
        double sigma2 = 0.0;
    };

    // log2 det(I + H H^H / sigma2), evaluated on the smaller Gram matrix.
    double capacity_bits(const ComplexMatrix &H, double sigma2);

    CapacityEstimate summarize_capacity(const std::vector<double> &samples, double sigma2);

    // Draws one realization per call.
    using ChannelSource = std::function<ChannelRealization(RandomStream &)>;

    struct MonteCarloOptions
    {
        std::size_t n_trials = 2000;
        std::uint64_t seed = 1;
        std::uint64_t stream_base = 0; // trial t uses RandomStream(seed, stream_base + t)
    };

    inline constexpr std::size_t min_capacity_trials = 100;

    // Per-trial capacities for each requested polarization set, all evaluated on the same
    // realizations. out[i][t] belongs to sets[i] and trial t.
    std::vector<std::vector<double>> mc_capacity_samples(const ChannelSource &source, double sigma2,
                                                         const std::vector<PolarizationSet> &sets,
                                                         const MonteCarloOptions &opt);

    CapacityEstimate mc_capacity(const ChannelSource &source, double sigma2, PolarizationSet mode,
                                 const MonteCarloOptions &opt);
    CapacityEstimate mc_capacity(const ChannelSource &source, double sigma2, PolarizationSet mode,
                                 std::size_t n_trials, const RandomStream &stream);

    // ---- closed-form bounds (xx polarization, single receive antenna) ----

    // log2(1 + (E^2[H] + V[H]) / sigma2) with the full near-field mean.
    double siso_capacity_bound(double R, const CavityEnvironment &env, double sigma2);

    // Far-field per-element power
    //   cos^2(kR)/(16 pi^2 R^2) + Q/(4kV) cos(kR)/(kR) sin(kR)/(kR)
    //   + 3 pi^2 Q^2/(32 V^2 k^4) + 9 pi^2 Q^2/(64 V^2 k^4) sin(2kR)/(2kR)
    // times field_scale^2.
    double farfield_element_power(double R, const CavityEnvironment &env);

    // log2(1 + farfield_element_power / sigma2). Warns below kR = 20.
    double siso_farfield_bound(double R, const CavityEnvironment &env, double sigma2);

    // Linear transmit array along x, element n (1-based) at ((n-1) spacing, 0, 0), receiver at
    // (0, 0, R).
    struct MisoGeometry
    {
        std::size_t n_elements = 100;
        double spacing = 0.0; // m
    };

    struct ElementMoments
    {
        double mean = 0.0;
        double variance = 0.0;
    };

    // Exact element moments: transverse plus cos^2 x_n weighted longitudinal bracket plus the NLoS
    // mean; variance is the SISO variance at R_n.
    ElementMoments miso_element_moments(double R, std::size_t n, double spacing, const CavityEnvironment &env);

    // Case-1 approximations at R_n: mean cos(kR_n)/(4 pi R_n) R^2/R_n^2 + pi Q/(2 V k^2) sin(kR_n)/(kR_n),
    // variance from the far-field kernels.
    ElementMoments miso_case1_moments(double R, std::size_t n, double spacing, const CavityEnvironment &env);

    // Sum over elements of the Case-1 power.
    double miso_case1_power(double R, const MisoGeometry &g, const CavityEnvironment &env);

    double miso_lower_bound(double R, const MisoGeometry &g, const CavityEnvironment &env, double sigma2);
    double miso_upper_bound(double R, std::size_t n_elements, const CavityEnvironment &env, double sigma2);

    // Mean of log2(1 + x_t) and log2(1 + mean(x_t)); the first never exceeds the second.
    struct JensenPair
    {
        double mean_log = 0.0;
        double log_mean = 0.0;
    };
    JensenPair jensen_pair(const std::vector<double> &snr_samples);

    // ---- spatial correlation and polarization eigenvalues ----

    enum class CorrelationModel
    {
        proposed, // common-field sampling of the xx channel
        rician,
        clarke
    };

    struct CorrelationOptions
    {
        double d_rt_over_lambda = 0.4;   // receiver height above the transmit line
        std::optional<double> K;          // proposed / rician
        std::size_t n_reference = 8;      // reference elements, spaced like the array (0.4 lambda)
        double reference_spacing_over_lambda = 0.4;
        std::size_t n_trials = 500;
        std::size_t n_waves = 2000;
        std::uint64_t seed = 1;
        bool clarke_3d = false;
    };

    // rho(d) = Re sum h(x_j) h*(x_j + d) / sqrt(sum |h(x_j)|^2 sum |h(x_j + d)|^2), sums over trials
    // and reference elements x_j on the transmit line. spacings must be ascending and start at 0.
    std::vector<double> correlation_vs_spacing(CorrelationModel model,
                                               const std::vector<double> &spacings_over_lambda,
                                               const CavityEnvironment &env, const CorrelationOptions &opt);

    struct EigenvalueCurve
    {
        std::vector<double> distances; // m
        // value[b][i] for block b = 3p + q at distance i, and its batch-means standard error
        std::array<std::vector<double>, 9> value;
        std::array<std::vector<double>, 9> std_error;
    };

    struct EigenvalueOptions
    {
        std::optional<double> K;
        std::size_t n_trials = 2000;
        std::size_t n_batches = 10;
        std::uint64_t seed = 1;
        ChannelMode mode = ChannelMode::real;
    };

    inline constexpr std::size_t min_eigenvalue_trials = 500;

    // The receive array is translated by distance along the transmit normal. For each distance
    // and block: largest eigenvalue of the trial-averaged H_pq H_pq^H.
    EigenvalueCurve polarization_eigenvalues(const ArrayGeometry &tx, const ArrayGeometry &rx_at_origin,
                                             const CavityEnvironment &env, const std::vector<double> &distances,
                                             const EigenvalueOptions &opt);
}

#endif
