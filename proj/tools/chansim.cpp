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
#include "chansim/experiments.hpp"

#include "CLI11.hpp"

#include <iostream>

namespace
{
    constexpr int exit_usage = 2;
    constexpr int exit_config = 3;
    constexpr int exit_runtime = 4;

    chansim::Config load(const std::string &path, const std::vector<std::string> &overrides)
    {
        chansim::Config c;
        if (!path.empty())
            c.load_file(path);
        for (const auto &o : overrides)
            c.set(o);
        return c;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"chansim: stochastic electromagnetic channel simulator"};
    app.require_subcommand(1);

    std::vector<std::string> names;
    for (const auto &e : chansim::experiment_list())
        names.emplace_back(e.name);

    std::string experiment, config_path, out_dir;
    std::vector<std::string> overrides;
    std::optional<std::uint64_t> seed;

    auto *run = app.add_subcommand("run", "run one experiment and write CSVs plus manifest.json");
    run->add_option("--experiment,-e", experiment, "experiment name (see `list`)")
        ->required()
        ->check(CLI::IsMember(names));
    run->add_option("--config,-c", config_path, "scenario file");
    run->add_option("--out,-o", out_dir, "output directory")->required();
    run->add_option("--seed", seed, "master seed, overrides simulation.seed");
    run->add_option("--set", overrides, "override, section.key=value (repeatable)");

    auto *validate = app.add_subcommand("validate", "print every resolved parameter");
    validate->add_option("--config,-c", config_path, "scenario file")->required();
    validate->add_option("--set", overrides, "override, section.key=value (repeatable)");
    bool strict = false;
    validate->add_flag("--strict", strict, "reject spacings below lambda/4");

    app.add_subcommand("list", "list experiments");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return exit_usage;
    }

    if (app.got_subcommand("list"))
    {
        for (const auto &e : chansim::experiment_list())
            std::cout << e.name << "\t" << e.description << "\n";
        return 0;
    }

    chansim::Config config;
    try
    {
        config = load(config_path, overrides);
        if (seed)
            config.set("simulation.seed=" + std::to_string(*seed));
        if (strict)
            config.set("simulation.strict_min_scatterer=true");
        if (app.got_subcommand("validate"))
        {
            std::cout << chansim::validation_report(config);
            return 0;
        }
    }
    catch (const chansim::Error &e)
    {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    }

    try
    {
        const auto files = chansim::run_experiment(experiment, config, out_dir);
        for (const auto &f : files)
            std::cout << out_dir << "/" << f << "\n";
        std::cout << out_dir << "/manifest.json\n";
        return 0;
    }
    catch (const chansim::ParseError &e)
    {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    }
    catch (const chansim::IoError &e)
    {
        std::cerr << "i/o error: " << e.what() << "\n";
        return exit_runtime;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_runtime;
    }
}
