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

#include "chansim/moments.hpp"
#include "chansim/errors.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace chansim
{
    namespace
    {
        void check_volume(double V, double kR)
        {
            if (!(V > 0.0))
                throw DomainError("moments: cavity volume must be positive");
            if (!(kR >= 0.0))
                throw DomainError("moments: kR must be non-negative");
        }

        // Brackets in terms of x = kR (means) or y = 2kR (second moments)
        const KernelCombination &mean_xx_bracket()
        {
            static const KernelCombination k(0, 1, 1, -1, 0, 0);
            return k;
        }
        const KernelCombination &second_xx_bracket()
        {
            static const KernelCombination k(4.0 / 3.0, 2, 2, -2, 0, 0);
            return k;
        }
        const KernelCombination &mean_zz_bracket()
        {
            static const KernelCombination k(0, 0, -1, 1, 0, 0);
            return k;
        }
        const KernelCombination &second_zz_bracket()
        {
            static const KernelCombination k(8.0 / 15.0, 0, 0, -8, -24, 24);
            return k;
        }
        const KernelCombination &var_xy_bracket()
        {
            static const KernelCombination k(64.0 / 15.0, 8, 16, -40, -72, 72);
            return k;
        }
        const KernelCombination &var_xz_bracket()
        {
            static const KernelCombination k(4.0 / 15.0, 0, -2, 8, 18, -18);
            return k;
        }
    }

    ComponentMoments copolar_transverse_moments(double kR, double V)
    {
        check_volume(V, kR);
        ComponentMoments m;
        m.mean = mean_xx_bracket()(kR) / (2.0 * V);
        m.second_moment = 9.0 / (128.0 * V * V) * second_xx_bracket()(2.0 * kR);
        m.variance = m.second_moment - m.mean * m.mean;
        return m;
    }

    ComponentMoments copolar_longitudinal_moments(double kR, double V)
    {
        check_volume(V, kR);
        ComponentMoments m;
        m.mean = mean_zz_bracket()(kR) / V;
        m.second_moment = 3.0 / (16.0 * V * V) * second_zz_bracket()(2.0 * kR);
        m.variance = m.second_moment - m.mean * m.mean;
        return m;
    }

    CrossVariances crosspolar_variances(double kR, double V)
    {
        check_volume(V, kR);
        const double y = 2.0 * kR;
        return {var_xy_bracket()(y) / (128.0 * V * V), var_xz_bracket()(y) / (8.0 * V * V)};
    }

    MomentSet moment_set(double kR, double V)
    {
        const auto t = copolar_transverse_moments(kR, V);
        const auto l = copolar_longitudinal_moments(kR, V);
        const auto c = crosspolar_variances(kR, V);

        MomentSet s;
        s.kR = kR;
        for (int p = 0; p < 3; ++p)
            for (int q = 0; q < 3; ++q)
            {
                if (p == q)
                {
                    const auto &m = (p == 2) ? l : t;
                    s.mean[p][q] = m.mean;
                    s.second_moment[p][q] = m.second_moment;
                    s.variance[p][q] = m.variance;
                }
                else
                {
                    const double v = (p == 2 || q == 2) ? c.xz : c.xy;
                    s.mean[p][q] = 0.0;
                    s.second_moment[p][q] = v;
                    s.variance[p][q] = v;
                }
            }
        return s;
    }

    SpectralParams spectral_params(const CavityEnvironment &env)
    {
        if (!(env.k > 0.0) || !(env.volume > 0.0) || !(env.quality > 0.0))
            throw DomainError("spectral_params: invalid environment");
        const double k = env.k, V = env.volume, Q = env.quality;
        return {2.0 * pi * pi / (k * V), k * k * k * V / (2.0 * pi * pi * Q), pi * Q / (k * k)};
    }

    ChannelMoments channel_moment_params(const PairGeometry &pair, const CavityEnvironment &env)
    {
        const auto sp = spectral_params(env);
        const auto ms = moment_set(env.k * pair.R, env.volume);
        const double a = env.field_scale * sp.scale;

        ChannelMoments cm;
        cm.mean_los = coherent_block(pair, env);
        for (int p = 0; p < 3; ++p)
            for (int q = 0; q < 3; ++q)
            {
                cm.mean_nlos[p][q] = a * ms.mean[p][q];
                cm.variance[p][q] = a * a * ms.variance[p][q];
            }
        return cm;
    }

    double kfactor_constant(const ChannelMoments &m, int p)
    {
        if (p < 0 || p > 2)
            throw ContractError("kfactor_constant: polarization index out of range");
        const double denom = m.mean_nlos[p][p] * m.mean_nlos[p][p] + m.variance[p][p];
        if (!(denom > 0.0))
            throw DegenerateError("kfactor_constant: NLoS power is zero");
        return m.mean_los[p][p] * m.mean_los[p][p] / denom;
    }

    double kfactor_constant(const PairGeometry &pair, const CavityEnvironment &env, int p)
    {
        return kfactor_constant(channel_moment_params(pair, env), p);
    }

    KWeights kfactor_weights(double K, double c)
    {
        if (!(K >= 0.0))
            throw DomainError("kfactor_weights: K must be non-negative");
        if (!(c >= 0.0))
            throw DomainError("kfactor_weights: c must be non-negative");
        if (std::isinf(K))
            return {1.0, 0.0};
        if (K == 0.0)
            return {0.0, 1.0};
        return {std::sqrt(K / (c + K)), std::sqrt(c / (c + K))};
    }

    Vec3 planewave_polarization(double psi, double phi, double cos_theta)
    {
        const double sin_theta = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
        const double cps = std::cos(psi), sps = std::sin(psi);
        const double cph = std::cos(phi), sph = std::sin(phi);
        return {-cps * sph - sps * cph * cos_theta, cps * cph - sps * sph * cos_theta,
                sps * sin_theta};
    }

    std::vector<OracleEstimate> planewave_oracle(const std::vector<double> &kR, double V,
                                                 const OracleOptions &opt)
    {
        if (!(V > 0.0))
            throw DomainError("planewave_oracle: cavity volume must be positive");
        for (double x : kR)
            if (!(x >= 0.0))
                throw DomainError("planewave_oracle: kR must be non-negative");
        if (opt.n_trials < 2)
            throw DomainError("planewave_oracle: need at least two trials");
        if (opt.mode == OracleMode::ensemble && opt.n_waves == 0)
            throw DomainError("planewave_oracle: need at least one plane wave");
        if (opt.chunk_size == 0)
            throw ContractError("planewave_oracle: chunk size must be positive");

        const std::size_t nk = kR.size();
        const std::size_t T = opt.n_trials;
        // samples[(t * nk + i) * 9 + 3p + q]
        std::vector<double> samples(T * nk * 9, 0.0);
        const std::size_t n_chunks = (T + opt.chunk_size - 1) / opt.chunk_size;
        const double amp = std::sqrt(2.0 / (double(opt.n_waves) * V));

        parallel_for(n_chunks, [&](std::size_t c)
        {
            RandomStream rng(opt.seed, opt.stream_base + c);
            const std::size_t t0 = c * opt.chunk_size;
            const std::size_t t1 = std::min(T, t0 + opt.chunk_size);
            std::vector<double> near(3 * nk), far(3 * nk);
            for (std::size_t t = t0; t < t1; ++t)
            {
                double *out = &samples[t * nk * 9];
                if (opt.mode == OracleMode::single_wave)
                {
                    const double psi = rng.uniform(0.0, 2.0 * pi);
                    const double phi = rng.uniform(0.0, 2.0 * pi);
                    const double ct = rng.uniform(-1.0, 1.0);
                    const Vec3 f = planewave_polarization(psi, phi, ct);
                    for (std::size_t i = 0; i < nk; ++i)
                    {
                        const double ph = std::cos(kR[i] * ct) / V;
                        for (int p = 0; p < 3; ++p)
                            for (int q = 0; q < 3; ++q)
                                out[i * 9 + 3 * p + q] = f[p] * f[q] * ph;
                    }
                    continue;
                }

                double psi0[3] = {0.0, 0.0, 0.0};
                std::fill(far.begin(), far.end(), 0.0);
                for (std::size_t w = 0; w < opt.n_waves; ++w)
                {
                    const double psi = rng.uniform(0.0, 2.0 * pi);
                    const double phi = rng.uniform(0.0, 2.0 * pi);
                    const double ct = rng.uniform(-1.0, 1.0);
                    const double beta = rng.uniform(0.0, 2.0 * pi);
                    const double a = opt.gaussian_amplitude ? amp * rng.normal() : amp * rng.sign();
                    const Vec3 f = a * planewave_polarization(psi, phi, ct);
                    const double cb = std::cos(beta);
                    for (int p = 0; p < 3; ++p)
                        psi0[p] += f[p] * cb;
                    for (std::size_t i = 0; i < nk; ++i)
                    {
                        const double cr = std::cos(kR[i] * ct + beta);
                        for (int p = 0; p < 3; ++p)
                            far[3 * i + p] += f[p] * cr;
                    }
                }
                for (std::size_t i = 0; i < nk; ++i)
                    for (int p = 0; p < 3; ++p)
                        for (int q = 0; q < 3; ++q)
                            out[i * 9 + 3 * p + q] = psi0[p] * far[3 * i + q];
            }
        });

        std::vector<OracleEstimate> res(nk);
        const double n = double(T);
        for (std::size_t i = 0; i < nk; ++i)
        {
            OracleEstimate &e = res[i];
            e.kR = kR[i];
            e.n_trials = T;
            for (int j = 0; j < 9; ++j)
            {
                double s = 0.0;
                for (std::size_t t = 0; t < T; ++t)
                    s += samples[(t * nk + i) * 9 + j];
                const double m = s / n;
                double s2 = 0.0;
                for (std::size_t t = 0; t < T; ++t)
                {
                    const double d = samples[(t * nk + i) * 9 + j] - m;
                    s2 += d * d;
                }
                const double var = s2 / (n - 1.0);
                double s4 = 0.0;
                for (std::size_t t = 0; t < T; ++t)
                {
                    const double d = samples[(t * nk + i) * 9 + j] - m;
                    const double dd = d * d - var;
                    s4 += dd * dd;
                }
                e.mean[j / 3][j % 3] = m;
                e.mean_se[j / 3][j % 3] = std::sqrt(var / n);
                e.variance[j / 3][j % 3] = var;
                e.variance_se[j / 3][j % 3] = std::sqrt(s4 / (n - 1.0) / n);
            }
        }

        const bool small = opt.n_trials < 1000 || (opt.mode == OracleMode::ensemble && opt.n_waves < 1000);
        if (small && !res.empty())
        {
            std::ostringstream os;
            os << "planewave_oracle: undersized ensemble (n_waves " << opt.n_waves << ", n_trials "
               << opt.n_trials << "); achieved standard error of the xx mean " << res[0].mean_se[0][0]
               << " (" << res[0].mean_se[0][0] * V << " in units of 1/V)";
            warn(os.str());
        }
        return res;
    }

    OracleEstimate planewave_oracle(double kR, double V, std::size_t n_waves, std::size_t n_trials,
                                    const RandomStream &stream)
    {
        OracleOptions opt;
        opt.n_waves = n_waves;
        opt.n_trials = n_trials;
        opt.seed = stream.seed();
        opt.stream_base = stream.stream_id() << 20;
        return planewave_oracle(std::vector<double>{kR}, V, opt).front();
    }
}
