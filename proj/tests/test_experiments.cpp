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

#include "chansim/errors.hpp"
#include "chansim/experiments.hpp"
#include "chansim/output.hpp"

#include "doctest.h"
#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <iterator>
#include <set>

using namespace chansim;
namespace fs = std::filesystem;

namespace
{
    const std::string quick = std::string(CHANSIM_CONFIG_DIR) + "/quick.ini";

    fs::path scratch(const std::string &name)
    {
        auto p = fs::temp_directory_path() / "chansim_test_experiments" / name;
        fs::remove_all(p);
        return p;
    }

    std::string slurp(const fs::path &p)
    {
        std::ifstream in(p, std::ios::binary);
        return {std::istreambuf_iterator<char>(in), {}};
    }

    std::vector<std::string> run(const std::string &name, const fs::path &out, std::uint64_t seed = 1)
    {
        ScopedWarningSink quiet([](std::string_view) {});
        return run_experiment({name, quick, out.string(), seed, {}});
    }
}

TEST_CASE("every experiment writes CSVs and a matching manifest")
{
    for (const auto &e : experiment_list())
    {
        CAPTURE(e.name);
        const auto out = scratch(e.name);
        const auto files = run(e.name, out);
        REQUIRE_FALSE(files.empty());

        std::ifstream in(out / "manifest.json");
        const auto j = nlohmann::json::parse(in);
        CHECK(j["experiment"] == e.name);
        CHECK(j["parameters"]["simulation.sigma2"] == "1e-4");
        std::set<std::string> listed, on_disk;
        for (const auto &f : j["files"])
        {
            listed.insert(f["name"].get<std::string>());
            CHECK(f["sha256"] == sha256_file((out / f["name"].get<std::string>()).string()));
        }
        for (const auto &entry : fs::directory_iterator(out))
            if (entry.path().filename() != "manifest.json")
                on_disk.insert(entry.path().filename().string());
        CHECK(listed == on_disk);

        for (const auto &f : files)
        {
            const auto t = read_csv((out / f).string());
            CHECK(*t.header_value("experiment") == e.name);
            CHECK(*t.header_value("seed") == "1");
            CHECK(t.header_value("units") != nullptr);
            CHECK_FALSE(t.rows.empty());
        }
    }
}

TEST_CASE("same seed gives bytewise-identical output, another seed does not")
{
    for (const char *name : {"capacity-coupling", "correlation", "capacity-region"})
    {
        CAPTURE(name);
        const auto a = scratch(std::string(name) + "_a"), b = scratch(std::string(name) + "_b"),
                   c = scratch(std::string(name) + "_c");
        const auto files = run(name, a);
        run(name, b);
        run(name, c, 2);
        for (const auto &f : files)
        {
            CHECK(slurp(a / f) == slurp(b / f));
            CHECK(slurp(a / f) != slurp(c / f));
        }
    }
}

TEST_CASE("column layout of the figure experiments")
{
    const auto out = scratch("layout");
    run("correlation", out);
    const auto t = read_csv((out / "correlation_drt0.4.csv").string());
    CHECK(t.columns == std::vector<std::string>{"spacing_lambda", "rho_proposed_K2", "rho_proposed_Kinf",
                                                "rho_rician_K2", "rho_clarke"});
    CHECK(t.rows.front()[1] == "1");
    CHECK(t.rows.front()[4] == "1");

    run("moments-oracle", out);
    const auto m = read_csv((out / "moments_oracle.csv").string());
    CHECK(m.columns == std::vector<std::string>{"kR", "component", "statistic", "closed_form", "empirical",
                                                "standard_error", "z_score"});
    CHECK(m.rows.size() == 2 * 9 * 2);
}

TEST_CASE("run-time errors")
{
    const auto out = scratch("errors");
    CHECK_THROWS_AS(run_experiment({"fig10", quick, out.string(), 1, {}}), ContractError);
    CHECK_THROWS_AS(run_experiment({"correlation", quick, out.string(), 1, {"simulation.bogus=1"}}), ParseError);
    CHECK_THROWS_AS(run_experiment({"correlation", "", out.string(), 1, {}}), ParseError);

    // a regular file where the output directory should go
    fs::create_directories(out);
    std::ofstream(out / "blocker") << "x";
    CHECK_THROWS_AS(run_experiment({"correlation", quick, (out / "blocker" / "sub").string(), 1, {}}), IoError);

    CHECK_THROWS_AS(run_experiment({"capacity-coupling", quick, (out / "cc").string(), 1,
                                    {"tx_array.impedance=/nonexistent/z.txt"}}),
                    ParseError);
}
