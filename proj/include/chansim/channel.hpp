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

#ifndef CHANSIM_CHANNEL_HPP
#define CHANSIM_CHANNEL_HPP

#include "chansim/geometry.hpp"
#include "chansim/moments.hpp"
#include "chansim/numerics.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace chansim
{
    // real: paper-literal real entries. complex_envelope: the Gaussian part gets independent
    // real and imaginary halves, each with half the variance.
    enum class ChannelMode
    {
        real,
        complex_envelope
    };

    // independent: every pair entry is drawn on its own from its marginal moments.
    // common_field: one plane-wave ensemble per realization feeds every pair, so entries are
    // spatially correlated.
    enum class SamplingMode
    {
        independent,
        common_field
    };

    // SP: xx block. DP: the x/y sub-tensor. TP: all nine blocks.
    enum class PolarizationSet
    {
        SP,
        DP,
        TP
    };

    using BlockMask = std::array<std::array<bool, 3>, 3>;
    BlockMask block_mask(PolarizationSet set);
    const char *to_string(PolarizationSet set);
    const char *to_string(ChannelMode mode);
    const char *to_string(SamplingMode mode);
    std::string polarization_label(int p, int q); // "xx", "xy", ...

    struct ChannelRealization
    {
        // blocks[p][q] is N_r x N_s; blocks outside mask are empty
        std::array<std::array<ComplexMatrix, 3>, 3> blocks;
        BlockMask mask{};
        bool coupled = false;
        std::uint64_t seed = 0;
        std::uint64_t stream_id = 0;
        std::optional<double> K; // empty: unmixed composition
        ChannelMode mode = ChannelMode::real;

        Eigen::Index n_rx() const;
        Eigen::Index n_tx() const;
    };

    // Blocks of set stacked as [H_pq], rows by receiver polarization and columns by
    // transmitter polarization, each in x, y, z order. Throws ContractError when a needed
    // block is missing.
    ComplexMatrix stacked_channel(const ChannelRealization &h, PolarizationSet set);

    struct SamplerOptions
    {
        std::optional<double> K;            // empty: E = mean + fluctuation with unit weights
        ChannelMode mode = ChannelMode::real;
        SamplingMode sampling = SamplingMode::independent;
        PolarizationSet blocks = PolarizationSet::TP;
        std::size_t n_waves = 2000;          // common_field only
        int kfactor_component = 0;           // co-polar component used for c
    };

    // Precomputes per-pair moments and mixing weights for a fixed scenario.
    class ChannelSampler
    {
    public:
        ChannelSampler(const ArrayGeometry &tx, const ArrayGeometry &rx, const CavityEnvironment &env,
                       const SamplerOptions &opt = {});

        ChannelRealization sample(RandomStream &stream) const;

        // Deterministic part sqrt(K/(c+K)) E_los + sqrt(c/(c+K)) E_nlos, and the standard deviation
        // of the random part, for block (p, q).
        const RealMatrix &mean(int p, int q) const { return mean_[3 * p + q]; }
        const RealMatrix &stddev(int p, int q) const { return sd_[3 * p + q]; }
        // Coherent block and per-pair c constant
        const RealMatrix &coherent(int p, int q) const { return los_[3 * p + q]; }
        const RealMatrix &c_constant() const { return c_; }

        const SamplerOptions &options() const { return opt_; }
        std::size_t n_rx() const { return rx_.size(); }
        std::size_t n_tx() const { return tx_.size(); }
        const CavityEnvironment &environment() const { return env_; }

    private:
        ArrayGeometry tx_, rx_;
        CavityEnvironment env_;
        SamplerOptions opt_;
        BlockMask mask_{};
        std::array<RealMatrix, 9> los_, mean_, sd_;
        RealMatrix c_, w_los_, w_nlos_;
    };

    ChannelRealization sample_isolated_channel(const ArrayGeometry &tx, const ArrayGeometry &rx,
                                               const CavityEnvironment &env, std::optional<double> K,
                                               PolarizationSet polarizations, RandomStream &stream);

    enum class CouplingSide
    {
        transmitter,
        receiver
    };

    struct CouplingMatrix
    {
        ComplexMatrix C;
        CouplingSide side = CouplingSide::transmitter;
        double condition = 1.0; // 2-norm condition number of Z + Z_s
    };

    inline constexpr double max_coupling_condition = 1e12;

    // C = Z (Z + diag(Z))^{-1}. Throws ShapeError for non-square Z and ConditioningError when
    // Z + Z_s is singular or its condition number reaches max_coupling_condition. Warns when Z is
    // not symmetric (a reciprocal array has Z = Z^T).
    CouplingMatrix coupling_matrix(const ComplexMatrix &Z, CouplingSide side);

    // Impedance file: header "N <count>", then N rows of N entries "a+bi" (ohms). Blank lines and
    // text after '#' are ignored.
    ComplexMatrix load_impedance(const std::string &path);
    ComplexMatrix parse_impedance(std::istream &in);
    void save_impedance(const std::string &path, const ComplexMatrix &Z, int precision = 17);
    void write_impedance(std::ostream &out, const ComplexMatrix &Z, int precision = 17);

    // Synthetic fixture: Z_nn = r_self, Z_mn = amplitude exp(-d/decay) exp(-j k d).
    ComplexMatrix synthetic_impedance(const ArrayGeometry &array, double wavelength,
                                      double r_self = 50.0, double amplitude = 5.0,
                                      double decay_wavelengths = 0.4);

    // Left-multiplies every present block by C_r and right-multiplies by C_s.
    ChannelRealization apply_coupling(const ChannelRealization &h, const ComplexMatrix &C_r,
                                      const ComplexMatrix &C_s);

    // Baselines fill the xx block only. Entries have average power entry_power.
    //   Rician:   sqrt(K/(K+1)) exp(-j k R_mn) + sqrt(1/(K+1)) CN(0, 1)
    //   Rayleigh: CN(0, 1)
    ChannelRealization baseline_rician(const ArrayGeometry &tx, const ArrayGeometry &rx, double K,
                                       double wavelength, RandomStream &stream, double entry_power = 1.0);
    ChannelRealization baseline_iid_rayleigh(const ArrayGeometry &tx, const ArrayGeometry &rx,
                                             RandomStream &stream, double entry_power = 1.0);

    // J0(2 pi d/lambda); the 3-D isotropic variant is sin(2 pi d/lambda)/(2 pi d/lambda).
    double clarke_correlation(double spacing_over_lambda, bool three_d = false);

    // CSV dump of one block: comment header (pair, dimensions, seed, stream, mode) then rows of
    // "re,im" pairs.
    void write_block_csv(std::ostream &out, const ChannelRealization &h, int p, int q);
}

#endif
