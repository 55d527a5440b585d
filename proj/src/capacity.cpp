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

#include "chansim/capacity.hpp"
#include "chansim/errors.hpp"
#include "chansim/greens.hpp"
#include "chansim/moments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace chansim
{
    double capacity_bits(const ComplexMatrix &H, double sigma2)
    {
        if (!(sigma2 > 0.0))
            throw DomainError("capacity: noise variance must be positive");
        if (H.size() == 0)
            throw DegenerateError("capacity: empty channel matrix");
        ComplexMatrix G = H.rows() <= H.cols() ? ComplexMatrix(H * H.adjoint()) : ComplexMatrix(H.adjoint() * H);
        G /= sigma2;
        G.diagonal().array() += 1.0;
        G = (0.5 * (G + G.adjoint())).eval();
        return hermitian_logdet2(G);
    }

    CapacityEstimate summarize_capacity(const std::vector<double> &samples, double sigma2)
    {
        if (samples.empty())
            throw DegenerateError("capacity: no samples");
        CapacityEstimate e;
        e.n_trials = samples.size();
        e.sigma2 = sigma2;
        double s = 0.0;
        for (double v : samples)
            s += v;
        e.mean_bits = s / double(samples.size());
        if (samples.size() > 1)
        {
            double ss = 0.0;
            for (double v : samples)
                ss += (v - e.mean_bits) * (v - e.mean_bits);
            e.std_dev = std::sqrt(ss / double(samples.size() - 1));
            e.half_width_95 = 1.96 * e.std_dev / std::sqrt(double(samples.size()));
        }
        return e;
    }

    std::vector<std::vector<double>> mc_capacity_samples(const ChannelSource &source, double sigma2,
                                                         const std::vector<PolarizationSet> &sets,
                                                         const MonteCarloOptions &opt)
    {
        if (!source)
            throw DegenerateError("mc_capacity: no channel source (no data)");
        if (!(sigma2 > 0.0))
            throw DomainError("mc_capacity: noise variance must be positive");
        if (opt.n_trials < min_capacity_trials)
            throw ContractError("mc_capacity: at least " + std::to_string(min_capacity_trials) +
                                " trials are required");
        std::vector<std::vector<double>> out(sets.size(), std::vector<double>(opt.n_trials, 0.0));
        parallel_for(opt.n_trials, [&](std::size_t t)
        {
            RandomStream rng(opt.seed, opt.stream_base + t);
            const auto h = source(rng);
            for (std::size_t i = 0; i < sets.size(); ++i)
                out[i][t] = capacity_bits(stacked_channel(h, sets[i]), sigma2);
        });
        return out;
    }

    CapacityEstimate mc_capacity(const ChannelSource &source, double sigma2, PolarizationSet mode,
                                 const MonteCarloOptions &opt)
    {
        return summarize_capacity(mc_capacity_samples(source, sigma2, {mode}, opt).front(), sigma2);
    }

    CapacityEstimate mc_capacity(const ChannelSource &source, double sigma2, PolarizationSet mode,
                                 std::size_t n_trials, const RandomStream &stream)
    {
        MonteCarloOptions opt;
        opt.n_trials = n_trials;
        opt.seed = stream.seed();
        opt.stream_base = stream.stream_id() << 32;
        return mc_capacity(source, sigma2, mode, opt);
    }

    double siso_capacity_bound(double R, const CavityEnvironment &env, double sigma2)
    {
        if (!(sigma2 > 0.0))
            throw DomainError("siso_capacity_bound: noise variance must be positive");
        const auto cm = channel_moment_params({R, Vec3::UnitZ()}, env);
        const double mean = cm.mean_los[0][0] + cm.mean_nlos[0][0];
        return std::log2(1.0 + (mean * mean + cm.variance[0][0]) / sigma2);
    }

    double farfield_element_power(double R, const CavityEnvironment &env)
    {
        if (!(R > 0.0))
            throw DegenerateError("far-field power: R must be positive");
        const double k = env.k, V = env.volume, Q = env.quality;
        const double x = k * R, y = 2.0 * x;
        const double k4 = k * k * k * k;
        const double p = std::cos(x) * std::cos(x) / (16.0 * pi * pi * R * R) +
                         Q / (4.0 * k * V) * (std::cos(x) / x) * (std::sin(x) / x) +
                         3.0 * pi * pi * Q * Q / (32.0 * V * V * k4) +
                         9.0 * pi * pi * Q * Q / (64.0 * V * V * k4) * (std::sin(y) / y);
        return env.field_scale * env.field_scale * p;
    }

    double siso_farfield_bound(double R, const CavityEnvironment &env, double sigma2)
    {
        if (!(sigma2 > 0.0))
            throw DomainError("siso_farfield_bound: noise variance must be positive");
        if (env.k * R < 20.0)
        {
            std::ostringstream os;
            os << "siso_farfield_bound: kR = " << env.k * R << " is below 20, far-field form is inaccurate";
            warn(os.str());
        }
        return std::log2(1.0 + farfield_element_power(R, env) / sigma2);
    }

    namespace
    {
        void check_element(double R, std::size_t n, double spacing)
        {
            if (!(R > 0.0))
                throw DegenerateError("MISO moments: R must be positive");
            if (n == 0)
                throw ContractError("MISO moments: element index is 1-based");
            if (!(spacing >= 0.0))
                throw DomainError("MISO moments: spacing must be non-negative");
        }
    }

    ElementMoments miso_element_moments(double R, std::size_t n, double spacing, const CavityEnvironment &env)
    {
        check_element(R, n, spacing);
        const double off = double(n - 1) * spacing;
        const auto pg = pair_geometry(Vec3(off, 0, 0), Vec3(0, 0, R));
        const auto cm = channel_moment_params(pg, env);
        return {cm.mean_los[0][0] + cm.mean_nlos[0][0], cm.variance[0][0]};
    }

    ElementMoments miso_case1_moments(double R, std::size_t n, double spacing, const CavityEnvironment &env)
    {
        check_element(R, n, spacing);
        const double off = double(n - 1) * spacing;
        const double Rn = std::sqrt(R * R + off * off);
        const double k = env.k, V = env.volume, Q = env.quality;
        const double x = k * Rn;
        const double scale = pi * Q / (k * k);
        const double s1 = std::sin(x) / x, s1y = std::sin(2.0 * x) / (2.0 * x);
        const double mean = std::cos(x) / (4.0 * pi * Rn) * (R * R) / (Rn * Rn) + scale / (2.0 * V) * s1;
        const double var = scale * scale / (V * V) * (9.0 / 128.0 * (4.0 / 3.0 + 2.0 * s1y) - 0.25 * s1 * s1);
        const double f = env.field_scale;
        return {f * mean, f * f * var};
    }

    double miso_case1_power(double R, const MisoGeometry &g, const CavityEnvironment &env)
    {
        double p = 0.0;
        for (std::size_t n = 1; n <= g.n_elements; ++n)
        {
            const auto m = miso_case1_moments(R, n, g.spacing, env);
            p += m.mean * m.mean + m.variance;
        }
        return p;
    }

    double miso_lower_bound(double R, const MisoGeometry &g, const CavityEnvironment &env, double sigma2)
    {
        if (!(sigma2 > 0.0))
            throw DomainError("miso_lower_bound: noise variance must be positive");
        if (g.n_elements == 0)
            throw DegenerateError("miso_lower_bound: no transmit elements");
        return std::log2(1.0 + miso_case1_power(R, g, env) / sigma2);
    }

    double miso_upper_bound(double R, std::size_t n_elements, const CavityEnvironment &env, double sigma2)
    {
        if (!(sigma2 > 0.0))
            throw DomainError("miso_upper_bound: noise variance must be positive");
        if (n_elements == 0)
            throw DegenerateError("miso_upper_bound: no transmit elements");
        return std::log2(1.0 + double(n_elements) * farfield_element_power(R, env) / sigma2);
    }

    JensenPair jensen_pair(const std::vector<double> &x)
    {
        if (x.empty())
            throw DegenerateError("jensen_pair: no samples");
        double a = 0.0, b = 0.0;
        for (double v : x)
        {
            if (!(v >= 0.0))
                throw DomainError("jensen_pair: SNR samples must be non-negative");
            a += std::log2(1.0 + v);
            b += v;
        }
        const double n = double(x.size());
        return {a / n, std::log2(1.0 + b / n)};
    }

    std::vector<double> correlation_vs_spacing(CorrelationModel model,
                                               const std::vector<double> &spacings,
                                               const CavityEnvironment &env, const CorrelationOptions &opt)
    {
        if (spacings.empty() || spacings.front() != 0.0)
            throw ContractError("correlation: spacings must start at 0");
        for (std::size_t i = 1; i < spacings.size(); ++i)
            if (!(spacings[i] > spacings[i - 1]))
                throw ContractError("correlation: spacings must be strictly ascending");

        std::vector<double> rho(spacings.size(), 0.0);
        if (model == CorrelationModel::clarke)
        {
            for (std::size_t i = 0; i < spacings.size(); ++i)
                rho[i] = clarke_correlation(spacings[i], opt.clarke_3d);
            return rho;
        }
        if (opt.n_reference == 0)
            throw ContractError("correlation: need at least one reference element");
        if (opt.n_trials == 0)
            throw ContractError("correlation: need at least one trial");
        if (opt.n_trials * opt.n_reference < 1000)
        {
            std::ostringstream os;
            os << "correlation: " << opt.n_trials << " trials x " << opt.n_reference
               << " references gives a standard error near " << 1.0 / std::sqrt(double(opt.n_trials * opt.n_reference));
            warn(os.str());
        }
        if (model == CorrelationModel::rician && !opt.K)
            throw ContractError("correlation: the Rician model needs a K-factor");

        // unique sample points x_j + d on the transmit line, in units of lambda
        const double lambda = env.wavelength;
        std::map<long long, std::size_t> index;
        std::vector<double> xs;
        std::vector<std::vector<std::size_t>> ref(spacings.size(), std::vector<std::size_t>(opt.n_reference));
        std::vector<std::size_t> base(opt.n_reference);
        auto slot = [&](double x)
        {
            const long long key = std::llround(x * 1e9);
            auto it = index.find(key);
            if (it != index.end())
                return it->second;
            index.emplace(key, xs.size());
            xs.push_back(x);
            return xs.size() - 1;
        };
        for (std::size_t j = 0; j < opt.n_reference; ++j)
            base[j] = slot(double(j) * opt.reference_spacing_over_lambda);
        for (std::size_t i = 0; i < spacings.size(); ++i)
            for (std::size_t j = 0; j < opt.n_reference; ++j)
                ref[i][j] = slot(double(j) * opt.reference_spacing_over_lambda + spacings[i]);

        ArrayGeometry tx;
        tx.spacing = opt.reference_spacing_over_lambda * lambda;
        for (double x : xs)
            tx.positions.push_back(Vec3(x * lambda, 0, 0));
        ArrayGeometry rx;
        rx.positions = {Vec3(0, 0, opt.d_rt_over_lambda * lambda)};

        std::optional<ChannelSampler> sampler;
        if (model == CorrelationModel::proposed)
        {
            SamplerOptions so;
            so.K = opt.K;
            so.sampling = SamplingMode::common_field;
            so.blocks = PolarizationSet::SP;
            so.n_waves = opt.n_waves;
            sampler.emplace(tx, rx, env, so);
        }

        std::vector<Eigen::VectorXcd> h(opt.n_trials);
        parallel_for(opt.n_trials, [&](std::size_t t)
        {
            RandomStream rng(opt.seed, t);
            const auto r = sampler ? sampler->sample(rng) : baseline_rician(tx, rx, *opt.K, lambda, rng);
            h[t] = r.blocks[0][0].row(0).transpose();
        });

        for (std::size_t i = 0; i < spacings.size(); ++i)
        {
            Complex num = 0.0;
            double pa = 0.0, pb = 0.0;
            for (std::size_t t = 0; t < opt.n_trials; ++t)
                for (std::size_t j = 0; j < opt.n_reference; ++j)
                {
                    const Complex a = h[t](Eigen::Index(base[j])), b = h[t](Eigen::Index(ref[i][j]));
                    num += a * std::conj(b);
                    pa += std::norm(a);
                    pb += std::norm(b);
                }
            if (!(pa > 0.0 && pb > 0.0))
                throw DegenerateError("correlation: zero channel power");
            rho[i] = num.real() / std::sqrt(pa * pb);
        }
        rho[0] = 1.0; // exact, removes rounding in the self term
        return rho;
    }

    EigenvalueCurve polarization_eigenvalues(const ArrayGeometry &tx, const ArrayGeometry &rx_at_origin,
                                             const CavityEnvironment &env, const std::vector<double> &distances,
                                             const EigenvalueOptions &opt)
    {
        if (opt.n_trials < min_eigenvalue_trials)
            throw ContractError("polarization_eigenvalues: at least " + std::to_string(min_eigenvalue_trials) +
                                " trials are required");
        if (opt.n_batches < 2 || opt.n_trials % opt.n_batches != 0)
            throw ContractError("polarization_eigenvalues: trials must split evenly into at least two batches");

        EigenvalueCurve out;
        out.distances = distances;
        for (auto &v : out.value)
            v.assign(distances.size(), 0.0);
        for (auto &v : out.std_error)
            v.assign(distances.size(), 0.0);

        const std::size_t per_batch = opt.n_trials / opt.n_batches;
        const Eigen::Index nr = Eigen::Index(rx_at_origin.size());
        for (std::size_t i = 0; i < distances.size(); ++i)
        {
            ArrayGeometry rx = rx_at_origin;
            for (auto &p : rx.positions)
                p += distances[i] * tx.normal;
            SamplerOptions so;
            so.K = opt.K;
            so.mode = opt.mode;
            so.blocks = PolarizationSet::TP;
            const ChannelSampler sampler(tx, rx, env, so);

            // batch Grams, accumulated in trial order inside each batch
            std::vector<std::array<ComplexMatrix, 9>> gram(opt.n_batches);
            parallel_for(opt.n_batches, [&](std::size_t b)
            {
                for (auto &g : gram[b])
                    g = ComplexMatrix::Zero(nr, nr);
                for (std::size_t t = b * per_batch; t < (b + 1) * per_batch; ++t)
                {
                    RandomStream rng(opt.seed, (std::uint64_t(i) << 32) + t);
                    const auto h = sampler.sample(rng);
                    for (int blk = 0; blk < 9; ++blk)
                    {
                        const auto &H = h.blocks[blk / 3][blk % 3];
                        gram[b][blk].noalias() += H * H.adjoint();
                    }
                }
            });

            for (int blk = 0; blk < 9; ++blk)
            {
                ComplexMatrix total = ComplexMatrix::Zero(nr, nr);
                std::vector<double> batch(opt.n_batches);
                for (std::size_t b = 0; b < opt.n_batches; ++b)
                {
                    total += gram[b][blk];
                    ComplexMatrix g = gram[b][blk] / double(per_batch);
                    g = (0.5 * (g + g.adjoint())).eval();
                    batch[b] = hermitian_eigenvalues(g).maxCoeff();
                }
                total /= double(opt.n_trials);
                total = (0.5 * (total + total.adjoint())).eval();
                out.value[blk][i] = hermitian_eigenvalues(total).maxCoeff();
                double m = 0.0, s = 0.0;
                for (double v : batch)
                    m += v;
                m /= double(batch.size());
                for (double v : batch)
                    s += (v - m) * (v - m);
                out.std_error[blk][i] = std::sqrt(s / double(batch.size() - 1) / double(batch.size()));
            }
        }
        return out;
    }
}
