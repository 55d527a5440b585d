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

#ifndef CHANSIM_CONFIG_HPP
#define CHANSIM_CONFIG_HPP

#include "chansim/geometry.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace chansim
{
    // Scenario configuration: flat INI text with sections [environment], [tx_array],
    // [rx_array] and [simulation]. Keys are addressed as "section.key". Every recognised key has
    // a default except environment.frequency; unknown sections or keys are parse errors.
    // Layering: defaults, then the file, then --set overrides.
    //
    // Lengths are read in the unit of their own section (`unit = lambda | m`, default lambda).
    class Config
    {
    public:
        struct Entry
        {
            std::string value;
            std::string origin; // "default", the file name, or "--set"
            std::size_t line = 0;
        };

        Config(); // defaults only

        void load(std::istream &in, const std::string &origin);
        void load_file(const std::string &path);
        void set(const std::string &assignment); // "section.key=value"

        bool has(const std::string &key) const;
        const Entry &entry(const std::string &key) const;
        const std::string &text(const std::string &key) const;
        double number(const std::string &key) const;
        std::uint64_t count(const std::string &key) const;
        bool flag(const std::string &key) const;
        std::vector<double> numbers(const std::string &key) const;
        Vec3 vector3(const std::string &key) const;
        std::optional<double> kfactor(const std::string &key) const; // none | inf | value

        // Length in metres: number(key) times the unit of the key's section.
        double length(const std::string &key, double wavelength) const;
        // File path; relative paths resolve against the directory of the file that set them.
        std::string path(const std::string &key) const;
        std::vector<double> lengths(const std::string &key, double wavelength) const;

        const std::map<std::string, Entry> &entries() const { return entries_; }

    private:
        [[noreturn]] void fail(const std::string &key, const std::string &why) const;
        std::map<std::string, Entry> entries_;
    };

    // Known keys with defaults and a one-line description, in report order.
    struct KeyInfo
    {
        const char *key;
        const char *default_value; // nullptr: required, "" : unset
        const char *description;
    };
    const std::vector<KeyInfo> &config_keys();

    CavityEnvironment environment_from(const Config &c);
    // section is "tx_array" or "rx_array". Layout planar uses nx, ny, spacing, normal; linear
    // uses n, spacing, axis. origin shifts the array.
    ArrayGeometry array_from(const Config &c, const std::string &section, double wavelength);

    // Resolved parameters plus derived quantities and minimum-scatterer status, one per line.
    // Throws DomainError on a spacing violation when simulation.strict_min_scatterer is set.
    std::string validation_report(const Config &c);
}

#endif
