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

#include "chansim/config.hpp"
#include "chansim/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace chansim
{
    const std::vector<KeyInfo> &config_keys()
    {
        static const std::vector<KeyInfo> keys = {
            {"environment.unit", "lambda", "length unit of this section (lambda | m)"},
            {"environment.frequency", nullptr, "carrier frequency, Hz"},
            {"environment.volume", "", "cavity volume, m^3 (overrides cavity_side)"},
            {"environment.cavity_side", "400", "side of a cubic cavity"},
            {"environment.quality_factor", "1e7", "cavity quality factor"},
            {"environment.field_scale", "1", "composite field constant omega*mu*I"},

            {"tx_array.unit", "lambda", "length unit of this section"},
            {"tx_array.layout", "planar", "planar | linear"},
            {"tx_array.nx", "6", "planar columns"},
            {"tx_array.ny", "6", "planar rows"},
            {"tx_array.n", "100", "linear element count"},
            {"tx_array.spacing", "0.4", "element pitch"},
            {"tx_array.axis", "1,0,0", "linear array direction"},
            {"tx_array.normal", "0,0,1", "planar array normal"},
            {"tx_array.origin", "0,0,0", "array origin"},
            {"tx_array.element_size", "0.3,0.3", "patch size (s_x, s_y), carried only"},
            {"tx_array.impedance", "", "impedance matrix file; empty uses the synthetic model"},

            {"rx_array.unit", "lambda", "length unit of this section"},
            {"rx_array.layout", "planar", "planar | linear"},
            {"rx_array.nx", "4", "planar columns"},
            {"rx_array.ny", "4", "planar rows"},
            {"rx_array.n", "1", "linear element count"},
            {"rx_array.spacing", "0.4", "element pitch"},
            {"rx_array.axis", "1,0,0", "linear array direction"},
            {"rx_array.normal", "0,0,1", "planar array normal"},
            {"rx_array.origin", "0,0,0", "array origin before displacement along the tx normal"},
            {"rx_array.element_size", "0.3,0.3", "patch size (s_x, s_y), carried only"},
            {"rx_array.impedance", "", "impedance matrix file; empty uses the synthetic model"},

            {"simulation.unit", "lambda", "length unit of this section"},
            {"simulation.sigma2", "1e-4", "noise variance"},
            {"simulation.n_trials", "2000", "Monte Carlo trials per point"},
            {"simulation.n_waves", "2000", "plane waves per common-field realization"},
            {"simulation.seed", "1", "master seed"},
            {"simulation.kfactor", "none", "K-factor: none | inf | value"},
            {"simulation.channel_mode", "real", "real | complex"},
            {"simulation.sampling", "independent", "independent | common"},
            {"simulation.strict_min_scatterer", "false", "reject spacings below lambda/4"},
            {"simulation.distances", "2,3,4,5,10,20,30,50", "capacity-coupling: distances"},
            {"simulation.los_distances", "2,3,5,10,20,50,100,150,200,250,300", "multipath-vs-los: distances"},
            {"simulation.corr_spacings",
             "0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1,1.1,1.2,1.3,1.4,1.5,1.6,1.7,1.8,1.9,2",
             "correlation: element offsets"},
            {"simulation.corr_d_rt", "0.4,10", "correlation: receiver heights, one file each"},
            {"simulation.corr_kfactor", "2", "correlation: finite K of the compared curves"},
            {"simulation.corr_reference", "8", "correlation: reference elements"},
            {"simulation.corr_trials", "500", "correlation: trials"},
            {"simulation.eig_distances", "2,3,4,5,10,20,50,100", "eigenvalues: distances"},
            {"simulation.eig_kfactor", "10", "eigenvalues: K of the multipath curve"},
            {"simulation.eig_trials", "2000", "eigenvalues: trials"},
            {"simulation.eig_batches", "10", "eigenvalues: batches for standard errors"},
            {"simulation.bound_elements", "100", "linear-array experiments: element count"},
            {"simulation.bound_spacing", "0.4", "linear-array experiments: pitch"},
            {"simulation.bound_distances", "2,2.5,3,3.5,4,4.5,5,10,20,50,100,150,200,250,300",
             "theory-bounds: distances"},
            {"simulation.region_nf_nf", "3,4", "regions: NF-NF placements"},
            {"simulation.region_nf_ff", "3,200", "regions: NF-FF placements"},
            {"simulation.region_ff_ff", "200,300", "regions: FF-FF placements"},
            {"simulation.region_trials", "1000", "regions: trials"},
            {"simulation.region_timeshare", "9", "regions: time-sharing points"},
            {"simulation.region_kfactors", "2,10", "region-kfactor: K values"},
            {"simulation.oracle_kr", "0.5,1,2,5,10,50", "moments-oracle: kR grid"},
            {"simulation.oracle_waves", "10000", "moments-oracle: plane waves per trial"},
            {"simulation.oracle_trials", "10000", "moments-oracle: trials"},
            {"simulation.oracle_mode", "ensemble", "moments-oracle: ensemble | single_wave"},
        };
        return keys;
    }

    namespace
    {
        std::string trim(const std::string &s)
        {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos)
                return {};
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        }

        const KeyInfo *lookup(const std::string &key)
        {
            for (const auto &k : config_keys())
                if (key == k.key)
                    return &k;
            return nullptr;
        }

        std::vector<std::string> split(const std::string &s)
        {
            std::vector<std::string> out;
            std::stringstream ss(s);
            std::string item;
            while (std::getline(ss, item, ','))
                out.push_back(trim(item));
            return out;
        }

        bool parse_double(const std::string &s, double &v)
        {
            if (s.empty())
                return false;
            std::size_t pos = 0;
            try
            {
                v = std::stod(s, &pos);
            }
            catch (const std::exception &)
            {
                return false;
            }
            return pos == s.size();
        }
    }

    Config::Config()
    {
        for (const auto &k : config_keys())
            if (k.default_value)
                entries_[k.key] = {k.default_value, "default", 0};
    }

    void Config::fail(const std::string &key, const std::string &why) const
    {
        std::size_t line = 0;
        std::string where;
        auto it = entries_.find(key);
        if (it != entries_.end() && it->second.line > 0)
        {
            line = it->second.line;
            where = " (" + it->second.origin + ":" + std::to_string(line) + ")";
        }
        else if (it != entries_.end() && it->second.origin == "--set")
            where = " (--set)";
        throw ParseError("config key '" + key + "': " + why + where, line, key);
    }

    void Config::load(std::istream &in, const std::string &origin)
    {
        std::string raw, section;
        std::size_t line = 0;
        while (std::getline(in, raw))
        {
            ++line;
            const auto hash = raw.find_first_of("#;");
            const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
            if (s.empty())
                continue;
            if (s.front() == '[')
            {
                if (s.back() != ']')
                    throw ParseError(origin + ":" + std::to_string(line) + ": unterminated section header", line);
                section = trim(s.substr(1, s.size() - 2));
                if (section != "environment" && section != "tx_array" && section != "rx_array" &&
                    section != "simulation")
                    throw ParseError(origin + ":" + std::to_string(line) + ": unknown section [" + section + "]",
                                     line, section);
                continue;
            }
            const auto eq = s.find('=');
            if (eq == std::string::npos)
                throw ParseError(origin + ":" + std::to_string(line) + ": expected key = value", line);
            if (section.empty())
                throw ParseError(origin + ":" + std::to_string(line) + ": key outside a section", line);
            const std::string key = section + "." + trim(s.substr(0, eq));
            if (!lookup(key))
                throw ParseError(origin + ":" + std::to_string(line) + ": unknown key '" + key + "'", line, key);
            entries_[key] = {trim(s.substr(eq + 1)), origin, line};
        }
    }

    void Config::load_file(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw IoError("cannot open config file '" + path + "'");
        load(in, path);
    }

    void Config::set(const std::string &assignment)
    {
        const auto eq = assignment.find('=');
        if (eq == std::string::npos)
            throw ParseError("--set expects section.key=value, got '" + assignment + "'", 0);
        const std::string key = trim(assignment.substr(0, eq));
        if (!lookup(key))
            throw ParseError("--set: unknown key '" + key + "'", 0, key);
        entries_[key] = {trim(assignment.substr(eq + 1)), "--set", 0};
    }

    bool Config::has(const std::string &key) const
    {
        auto it = entries_.find(key);
        return it != entries_.end() && !it->second.value.empty();
    }

    const Config::Entry &Config::entry(const std::string &key) const
    {
        if (!lookup(key))
            throw ContractError("config: unregistered key '" + key + "'");
        auto it = entries_.find(key);
        if (it == entries_.end())
            throw ParseError("config key '" + key + "' is required but missing", 0, key);
        return it->second;
    }

    const std::string &Config::text(const std::string &key) const { return entry(key).value; }

    double Config::number(const std::string &key) const
    {
        double v = 0.0;
        if (!parse_double(text(key), v))
            fail(key, "expected a number, got '" + text(key) + "'");
        return v;
    }

    std::uint64_t Config::count(const std::string &key) const
    {
        const double v = number(key);
        if (!(v >= 0.0) || v != std::floor(v) || v > 1e15)
            fail(key, "expected a non-negative integer, got '" + text(key) + "'");
        return std::uint64_t(v);
    }

    bool Config::flag(const std::string &key) const
    {
        std::string v = text(key);
        std::transform(v.begin(), v.end(), v.begin(), [](unsigned char ch) { return char(std::tolower(ch)); });
        if (v == "true" || v == "yes" || v == "on" || v == "1")
            return true;
        if (v == "false" || v == "no" || v == "off" || v == "0")
            return false;
        fail(key, "expected true or false, got '" + text(key) + "'");
    }

    std::vector<double> Config::numbers(const std::string &key) const
    {
        std::vector<double> out;
        for (const auto &item : split(text(key)))
        {
            double v = 0.0;
            if (!parse_double(item, v))
                fail(key, "expected a comma-separated list of numbers, got '" + text(key) + "'");
            out.push_back(v);
        }
        if (out.empty())
            fail(key, "empty list");
        return out;
    }

    Vec3 Config::vector3(const std::string &key) const
    {
        const auto v = numbers(key);
        if (v.size() != 3)
            fail(key, "expected three components");
        return Vec3(v[0], v[1], v[2]);
    }

    std::optional<double> Config::kfactor(const std::string &key) const
    {
        const std::string &v = text(key);
        if (v == "none")
            return std::nullopt;
        const double K = number(key);
        if (!(K >= 0.0))
            fail(key, "K-factor must be non-negative");
        return K;
    }

    double Config::length(const std::string &key, double wavelength) const
    {
        return number(key) * (text(key.substr(0, key.find('.')) + ".unit") == "m" ? 1.0 : wavelength);
    }

    std::vector<double> Config::lengths(const std::string &key, double wavelength) const
    {
        auto v = numbers(key);
        const double f = text(key.substr(0, key.find('.')) + ".unit") == "m" ? 1.0 : wavelength;
        for (auto &x : v)
            x *= f;
        return v;
    }

    std::string Config::path(const std::string &key) const
    {
        const auto &e = entry(key);
        std::filesystem::path p(e.value);
        if (p.is_relative() && e.line > 0)
            p = std::filesystem::path(e.origin).parent_path() / p;
        return p.string();
    }

    namespace
    {
        void check_units(const Config &c)
        {
            for (const char *s : {"environment", "tx_array", "rx_array", "simulation"})
            {
                const std::string key = std::string(s) + ".unit";
                const auto &u = c.text(key);
                if (u != "lambda" && u != "m")
                    throw ParseError("config key '" + key + "': expected lambda or m, got '" + u + "'",
                                     c.entry(key).line, key);
            }
        }
    }

    CavityEnvironment environment_from(const Config &c)
    {
        check_units(c);
        if (!c.has("environment.frequency"))
            throw ParseError("config key 'environment.frequency' is required but missing", 0,
                             "environment.frequency");
        const double f = c.number("environment.frequency");
        if (!(f > 0.0))
            throw ParseError("config key 'environment.frequency' must be positive", c.entry("environment.frequency").line,
                             "environment.frequency");
        const double lambda = speed_of_light / f;
        double V;
        if (c.has("environment.volume"))
            V = c.number("environment.volume");
        else
            V = std::pow(c.length("environment.cavity_side", lambda), 3);
        const double Q = c.number("environment.quality_factor");
        try
        {
            return make_environment(f, V, Q, c.number("environment.field_scale"));
        }
        catch (const DomainError &e)
        {
            throw ParseError(std::string("environment: ") + e.what(), 0, "environment");
        }
    }

    ArrayGeometry array_from(const Config &c, const std::string &section, double wavelength)
    {
        if (section != "tx_array" && section != "rx_array")
            throw ContractError("array_from: unknown section '" + section + "'");
        check_units(c);
        const auto key = [&](const char *k) { return section + "." + k; };
        const Vec3 origin = c.vector3(key("origin"));
        const double f = c.text(key("unit")) == "m" ? 1.0 : wavelength;
        const double spacing = c.length(key("spacing"), wavelength);
        const std::string &layout = c.text(key("layout"));
        ArrayGeometry a;
        try
        {
            if (layout == "planar")
            {
                const Vec3 n = c.vector3(key("normal"));
                if (!(n.norm() > 0.0))
                    throw ParseError("config key '" + key("normal") + "': zero vector", c.entry(key("normal")).line,
                                     key("normal"));
                a = build_planar_array(c.count(key("nx")), c.count(key("ny")), spacing, origin * f, n.normalized());
            }
            else if (layout == "linear")
            {
                const Vec3 ax = c.vector3(key("axis"));
                if (!(ax.norm() > 0.0))
                    throw ParseError("config key '" + key("axis") + "': zero vector", c.entry(key("axis")).line,
                                     key("axis"));
                a = build_linear_array(c.count(key("n")), spacing, ax.normalized(), origin * f);
            }
            else
                throw ParseError("config key '" + key("layout") + "': expected planar or linear, got '" + layout + "'",
                                 c.entry(key("layout")).line, key("layout"));
        }
        catch (const DomainError &e)
        {
            throw ParseError(section + ": " + e.what(), c.entry(key("spacing")).line, key("spacing"));
        }
        catch (const DegenerateError &e)
        {
            throw ParseError(section + ": " + e.what(), 0, section);
        }
        const auto size = c.numbers(key("element_size"));
        if (size.size() != 2)
            throw ParseError("config key '" + key("element_size") + "': expected two components",
                             c.entry(key("element_size")).line, key("element_size"));
        a.element_size = {size[0] * f, size[1] * f};
        return a;
    }

    std::string validation_report(const Config &c)
    {
        std::ostringstream os;
        os << std::setprecision(10);
        for (const auto &k : config_keys())
        {
            auto it = c.entries().find(k.key);
            os << k.key << " = ";
            if (it == c.entries().end() || it->second.value.empty())
                os << "(unset)";
            else
                os << it->second.value;
            if (it != c.entries().end())
            {
                os << "  [" << it->second.origin;
                if (it->second.line > 0)
                    os << ":" << it->second.line;
                os << "]";
            }
            os << "\n";
        }

        const auto env = environment_from(c);
        const double lambda = env.wavelength;
        os << "derived.wavelength_m = " << lambda << "\n";
        os << "derived.k_rad_per_m = " << env.k << "\n";
        os << "derived.volume_m3 = " << env.volume << "\n";
        os << "derived.volume_lambda3 = " << env.volume / (lambda * lambda * lambda) << "\n";
        os << "derived.cavity_side_lambda = " << std::cbrt(env.volume) / lambda << "\n";
        os << "derived.quality_factor = " << env.quality << "\n";

        const bool strict = c.flag("simulation.strict_min_scatterer");
        for (const char *s : {"tx_array", "rx_array"})
        {
            const auto a = array_from(c, s, lambda);
            const double dmin = min_element_spacing(a);
            os << "derived." << s << ".elements = " << a.size() << "\n";
            os << "derived." << s << ".min_spacing_lambda = " << dmin / lambda << "\n";
            const bool ok = !(dmin < 0.25 * lambda * (1 - 1e-12));
            os << "derived." << s << ".min_scatterer = " << (ok ? "ok" : (strict ? "rejected" : "warning")) << "\n";
            check_min_scatterer(a, lambda, strict, s);
        }
        return os.str();
    }
}
