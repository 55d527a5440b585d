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

#ifndef CHANSIM_GEOMETRY_HPP
#define CHANSIM_GEOMETRY_HPP

#include <Eigen/Dense>

#include <array>
#include <cstddef>
#include <vector>

namespace chansim
{
    using Vec3 = Eigen::Vector3d;

    inline constexpr double speed_of_light = 299792458.0;

    // Multipath environment. field_scale is the composite constant in front of every field
    // expression (omega * mu * I); it defaults to 1 so that the noise variance alone sets the SNR.
    struct CavityEnvironment
    {
        double frequency = 0.0;   // Hz
        double wavelength = 0.0;  // m
        double k = 0.0;           // rad/m
        double volume = 0.0;      // m^3
        double quality = 0.0;     // Q
        double field_scale = 1.0;
    };

    // Validates and fills the derived quantities. Throws DomainError on non-positive inputs.
    CavityEnvironment make_environment(double frequency, double volume, double quality,
                                       double field_scale = 1.0);

    struct ArrayGeometry
    {
        std::vector<Vec3> positions;          // m
        double spacing = 0.0;                 // m
        std::array<double, 2> element_size{}; // (s_x, s_y) m, carried but unused by the field model
        Vec3 normal = Vec3::UnitZ();

        std::size_t size() const { return positions.size(); }
    };

    // Element n (0-based) sits at origin + n * spacing * axis.
    ArrayGeometry build_linear_array(std::size_t n, double spacing, const Vec3 &axis,
                                     const Vec3 &origin = Vec3::Zero());

    // nx * ny grid centred on origin in the plane orthogonal to normal. Row-major: element
    // (row i, column j) has index i * nx + j; columns run along u, rows along v = normal x u,
    // where u is x projected onto the plane (y when the normal is parallel to x).
    ArrayGeometry build_planar_array(std::size_t nx, std::size_t ny, double spacing,
                                     const Vec3 &origin = Vec3::Zero(),
                                     const Vec3 &normal = Vec3::UnitZ());

    struct PairGeometry
    {
        double R = 0.0;                  // m
        Vec3 direction = Vec3::UnitZ();  // (rx - tx) / R, i.e. the direction cosines
    };

    // N_r x N_s table of pair geometries, indexed (m, n) = (receiver, transmitter).
    class PairTable
    {
    public:
        PairTable(std::size_t n_rx, std::size_t n_tx) : n_rx_(n_rx), n_tx_(n_tx), pairs_(n_rx * n_tx) {}

        std::size_t n_rx() const { return n_rx_; }
        std::size_t n_tx() const { return n_tx_; }
        const PairGeometry &operator()(std::size_t m, std::size_t n) const { return pairs_[m * n_tx_ + n]; }
        PairGeometry &operator()(std::size_t m, std::size_t n) { return pairs_[m * n_tx_ + n]; }

    private:
        std::size_t n_rx_, n_tx_;
        std::vector<PairGeometry> pairs_;
    };

    // Throws DegenerateError when a transmitter and a receiver element coincide.
    PairTable pairwise_geometry(const ArrayGeometry &tx, const ArrayGeometry &rx);
    PairGeometry pair_geometry(const Vec3 &tx, const Vec3 &rx);

    // Smallest distance between two elements of the array (+inf for a single element).
    double min_element_spacing(const ArrayGeometry &array);

    // Minimum-scatterer rule: every element spacing must be at least lambda / 4. Coincident
    // elements always throw DegenerateError. A violation warns, or throws DomainError when
    // strict is set.
    void check_min_scatterer(const ArrayGeometry &array, double wavelength, bool strict,
                             const char *label = "array");
}

#endif
