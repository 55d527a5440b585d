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

#include "chansim/geometry.hpp"
#include "chansim/errors.hpp"
#include "chansim/numerics.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace chansim
{
    CavityEnvironment make_environment(double frequency, double volume, double quality,
                                       double field_scale)
    {
        if (!(frequency > 0.0) || !std::isfinite(frequency))
            throw DomainError("environment: frequency must be positive");
        if (!(volume > 0.0) || !std::isfinite(volume))
            throw DomainError("environment: volume must be positive");
        if (!(quality > 0.0) || !std::isfinite(quality))
            throw DomainError("environment: quality factor must be positive");
        if (!std::isfinite(field_scale))
            throw DomainError("environment: field scale must be finite");

        CavityEnvironment env;
        env.frequency = frequency;
        env.wavelength = speed_of_light / frequency;
        env.k = 2.0 * pi / env.wavelength;
        env.volume = volume;
        env.quality = quality;
        env.field_scale = field_scale;
        return env;
    }

    ArrayGeometry build_linear_array(std::size_t n, double spacing, const Vec3 &axis,
                                     const Vec3 &origin)
    {
        if (n == 0)
            throw DegenerateError("linear array: element count must be at least 1");
        if (!(spacing > 0.0))
            throw DomainError("linear array: spacing must be positive");
        const double len = axis.norm();
        if (!(len > 0.0))
            throw DomainError("linear array: axis must be non-zero");
        const Vec3 u = axis / len;

        ArrayGeometry a;
        a.spacing = spacing;
        a.positions.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
            a.positions.push_back(origin + double(i) * spacing * u);

        // Any unit vector orthogonal to the axis will do as a nominal normal
        const Vec3 helper = std::abs(u.z()) < 0.9 ? Vec3::UnitZ() : Vec3::UnitX();
        a.normal = (helper - helper.dot(u) * u).normalized();
        return a;
    }

    ArrayGeometry build_planar_array(std::size_t nx, std::size_t ny, double spacing,
                                     const Vec3 &origin, const Vec3 &normal)
    {
        if (nx == 0 || ny == 0)
            throw DegenerateError("planar array: element counts must be at least 1");
        if (!(spacing > 0.0))
            throw DomainError("planar array: spacing must be positive");
        const double len = normal.norm();
        if (!(len > 0.0))
            throw DomainError("planar array: normal must be non-zero");
        const Vec3 nrm = normal / len;

        Vec3 helper = Vec3::UnitX();
        if (nrm.cross(helper).norm() < 1e-9)
            helper = Vec3::UnitY();
        const Vec3 u = (helper - helper.dot(nrm) * nrm).normalized();
        const Vec3 v = nrm.cross(u);

        ArrayGeometry a;
        a.spacing = spacing;
        a.normal = nrm;
        a.positions.reserve(nx * ny);
        const double cx = 0.5 * double(nx - 1), cy = 0.5 * double(ny - 1);
        for (std::size_t i = 0; i < ny; ++i)
            for (std::size_t j = 0; j < nx; ++j)
                a.positions.push_back(origin + (double(j) - cx) * spacing * u +
                                      (double(i) - cy) * spacing * v);
        return a;
    }

    PairGeometry pair_geometry(const Vec3 &tx, const Vec3 &rx)
    {
        const Vec3 d = rx - tx;
        const double R = d.norm();
        const double ref = std::max(tx.norm(), rx.norm());
        if (!(R > 1e-14 * ref) || R == 0.0)
            throw DegenerateError("pair geometry: transmitter and receiver elements coincide");
        return {R, d / R};
    }

    PairTable pairwise_geometry(const ArrayGeometry &tx, const ArrayGeometry &rx)
    {
        PairTable t(rx.size(), tx.size());
        for (std::size_t m = 0; m < rx.size(); ++m)
            for (std::size_t n = 0; n < tx.size(); ++n)
                t(m, n) = pair_geometry(tx.positions[n], rx.positions[m]);
        return t;
    }

    double min_element_spacing(const ArrayGeometry &array)
    {
        double best = std::numeric_limits<double>::infinity();
        const auto &p = array.positions;
        for (std::size_t i = 0; i < p.size(); ++i)
            for (std::size_t j = i + 1; j < p.size(); ++j)
                best = std::min(best, (p[i] - p[j]).norm());
        return best;
    }

    void check_min_scatterer(const ArrayGeometry &array, double wavelength, bool strict,
                             const char *label)
    {
        const double d = min_element_spacing(array);
        if (d == 0.0)
            throw DegenerateError(std::string(label) + ": element positions are not distinct");
        // small slack so that exactly lambda/4 given in wavelength units passes
        if (d < 0.25 * wavelength * (1.0 - 1e-12))
        {
            std::ostringstream os;
            os << label << ": element spacing " << d / wavelength
               << " lambda is below the lambda/4 minimum-scatterer limit";
            if (strict)
                throw DomainError(os.str());
            warn(os.str());
        }
    }
}
