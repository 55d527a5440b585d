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
#include "chansim/numerics.hpp"
#include "chansim/errors.hpp"

#include "doctest.h"

#include <cmath>
#include <sstream>

using namespace chansim;

namespace
{
    const std::string dir = CHANSIM_CONFIG_DIR;

    Config parse(const std::string &text)
    {
        Config c;
        std::istringstream in(text);
        c.load(in, "inline");
        return c;
    }
}

TEST_CASE("shipped scenario resolves to the desk-scale setup")
{
    Config c;
    c.load_file(dir + "/paper_defaults.ini");
    const auto env = environment_from(c);
    const double lambda = speed_of_light / 5e9;
    CHECK(env.wavelength == doctest::Approx(lambda).epsilon(1e-15));
    CHECK(env.k == doctest::Approx(2 * pi / lambda).epsilon(1e-12));
    CHECK(env.volume == doctest::Approx(std::pow(400 * lambda, 3)).epsilon(1e-12));
    CHECK(env.quality == 1e7);

    const auto tx = array_from(c, "tx_array", lambda);
    const auto rx = array_from(c, "rx_array", lambda);
    CHECK(tx.size() == 36);
    CHECK(rx.size() == 16);
    CHECK(min_element_spacing(tx) == doctest::Approx(0.4 * lambda).epsilon(1e-12));

    const auto report = validation_report(c);
    CHECK(report.find("environment.frequency = 5e9") != std::string::npos);
    CHECK(report.find("derived.volume_lambda3 = 64000000") != std::string::npos);
    CHECK(report.find("derived.tx_array.elements = 36") != std::string::npos);
    CHECK(report.find("simulation.n_waves = 2000  [default]") != std::string::npos);
    CHECK(report.find("min_scatterer = ok") != std::string::npos);
}

TEST_CASE("missing frequency names the key")
{
    Config c;
    c.load_file(dir + "/missing_frequency.ini");
    try
    {
        environment_from(c);
        FAIL("expected a parse error");
    }
    catch (const ParseError &e)
    {
        CHECK(e.key() == "environment.frequency");
        CHECK(std::string(e.what()).find("environment.frequency") != std::string::npos);
    }
}

TEST_CASE("strict minimum-scatterer rejection")
{
    Config c;
    c.load_file(dir + "/strict_violation.ini");
    CHECK_THROWS_AS(validation_report(c), DomainError);
    c.set("simulation.strict_min_scatterer=false");
    std::string report;
    {
        ScopedWarningSink quiet([](std::string_view) {});
        report = validation_report(c);
    }
    CHECK(report.find("derived.tx_array.min_scatterer = warning") != std::string::npos);
}

TEST_CASE("parse errors carry line and key")
{
    try
    {
        parse("[environment]\nfrequency = 5e9\n\n[tx_array]\nspacng = 0.4\n");
        FAIL("expected a parse error");
    }
    catch (const ParseError &e)
    {
        CHECK(e.line() == 5);
        CHECK(e.key() == "tx_array.spacng");
    }
    CHECK_THROWS_AS(parse("frequency = 5e9\n"), ParseError);
    CHECK_THROWS_AS(parse("[cavity]\n"), ParseError);
    CHECK_THROWS_AS(parse("[environment\n"), ParseError);
    CHECK_THROWS_AS(parse("[environment]\nfrequency\n"), ParseError);

    const auto c = parse("[environment]\nfrequency = 5 GHz\n");
    try
    {
        environment_from(c);
        FAIL("expected a parse error");
    }
    catch (const ParseError &e)
    {
        CHECK(e.line() == 2);
        CHECK(e.key() == "environment.frequency");
    }
}

TEST_CASE("layering and typed accessors")
{
    auto c = parse("[environment]\nfrequency = 5e9 ; carrier\nunit = m\ncavity_side = 2\n"
                   "[simulation]\nkfactor = inf\ndistances = 1, 2.5,4\n");
    CHECK(environment_from(c).volume == doctest::Approx(8.0).epsilon(1e-15));
    CHECK(std::isinf(*c.kfactor("simulation.kfactor")));
    const double lambda = speed_of_light / 5e9;
    const auto d = c.lengths("simulation.distances", lambda);
    REQUIRE(d.size() == 3);
    CHECK(d[1] == doctest::Approx(2.5 * lambda).epsilon(1e-15));
    c.set("simulation.kfactor=none");
    CHECK_FALSE(c.kfactor("simulation.kfactor"));
    c.set("environment.volume = 27");
    CHECK(environment_from(c).volume == 27.0);
    CHECK(c.entry("environment.volume").origin == "--set");
    CHECK(c.count("simulation.n_trials") == 2000);
    CHECK_FALSE(c.flag("simulation.strict_min_scatterer"));
    CHECK_THROWS_AS(c.set("simulation.bogus=1"), ParseError);
    CHECK_THROWS_AS(c.set("no-equals"), ParseError);
    c.set("simulation.n_trials=2.5");
    CHECK_THROWS_AS(c.count("simulation.n_trials"), ParseError);
    c.set("simulation.unit=furlong");
    CHECK_THROWS_AS(environment_from(c), ParseError);
}

TEST_CASE("linear layout and relative paths")
{
    Config c;
    c.load_file(dir + "/paper_defaults.ini");
    c.set("tx_array.layout=linear");
    const double lambda = speed_of_light / 5e9;
    const auto tx = array_from(c, "tx_array", lambda);
    CHECK(tx.size() == 100);
    CHECK((tx.positions.back() - tx.positions.front()).norm() == doctest::Approx(39.6 * lambda).epsilon(1e-12));
    CHECK(c.path("tx_array.impedance") == dir + "/../data/z_tx_6x6.txt");
    c.set("tx_array.layout=hexagonal");
    CHECK_THROWS_AS(array_from(c, "tx_array", lambda), ParseError);
}
