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

#include "chansim/radiation.hpp"
#include "chansim/errors.hpp"
#include "chansim/moments.hpp"

#include <cmath>

namespace chansim
{
    namespace
    {
        double quadratic_sum(const PairTable &pairs, const CavityEnvironment &env, const ComplexMatrix &C_s,
                             int p, int q, bool with_variance)
        {
            if (p < 0 || p > 2 || q < 0 || q > 2)
                throw ContractError("radiation: polarization index out of range");
            const Eigen::Index ns = Eigen::Index(pairs.n_tx());
            if (C_s.rows() != ns || C_s.cols() != ns)
                throw ShapeError("radiation: coupling matrix does not match the transmitter size");

            Eigen::VectorXd d = Eigen::VectorXd::Zero(ns);
            for (std::size_t m = 0; m < pairs.n_rx(); ++m)
                for (Eigen::Index n = 0; n < ns; ++n)
                {
                    const auto cm = channel_moment_params(pairs(m, std::size_t(n)), env);
                    const double mean = cm.mean_los[p][q] + cm.mean_nlos[p][q];
                    d(n) += mean * mean + (with_variance ? cm.variance[p][q] : 0.0);
                }
            // sum of all entries of C^H diag(d) C = (C 1)^H diag(d) (C 1)
            const Eigen::VectorXcd v = C_s * Eigen::VectorXcd::Ones(ns);
            double acc = 0.0;
            for (Eigen::Index n = 0; n < ns; ++n)
                acc += d(n) * std::norm(v(n));
            return acc;
        }
    }

    double radiation_intensity(const PairTable &pairs, const CavityEnvironment &env, const ComplexMatrix &C_s,
                               int p, int q)
    {
        return quadratic_sum(pairs, env, C_s, p, q, true);
    }

    double average_radiated_power(const PairTable &pairs, const CavityEnvironment &env,
                                  const ComplexMatrix &C_s, int p, int q)
    {
        return quadratic_sum(pairs, env, C_s, p, q, false);
    }

    GainDirectivity directivity_gain(double U, double P_av)
    {
        if (!(P_av > 0.0))
            throw DegenerateError("directivity_gain: average radiated power must be positive");
        const double g = 4.0 * pi * U / P_av;
        return {g, g};
    }

    RadiationReport radiation_report(const ArrayGeometry &tx, const ArrayGeometry &rx,
                                     const CavityEnvironment &env, const ComplexMatrix &C_s, int p, int q)
    {
        const auto pairs = pairwise_geometry(tx, rx);
        RadiationReport r;
        r.U = radiation_intensity(pairs, env, C_s, p, q);
        r.P_av = average_radiated_power(pairs, env, C_s, p, q);
        const auto gd = directivity_gain(r.U, r.P_av);
        r.G = gd.G;
        r.D = gd.D;
        r.C_s = C_s;
        return r;
    }
}
