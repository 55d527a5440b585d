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

#ifndef CHANSIM_EXPERIMENTS_HPP
#define CHANSIM_EXPERIMENTS_HPP

#include "chansim/config.hpp"

#include <optional>
#include <string>
#include <vector>

namespace chansim
{
    struct ExperimentInfo
    {
        const char *name;
        const char *description;
    };
    const std::vector<ExperimentInfo> &experiment_list();
    bool is_experiment(const std::string &name);

    struct ExperimentSpec
    {
        std::string name;
        std::string config_path; // empty: defaults only (then environment.frequency must be --set)
        std::string output_dir;
        std::optional<std::uint64_t> seed;
        std::vector<std::string> overrides; // "section.key=value"
    };

    // Loads and layers the configuration, checks the output directory, runs the experiment and
    // writes its CSVs plus manifest.json. Returns the CSV names, relative to output_dir.
    std::vector<std::string> run_experiment(const ExperimentSpec &spec);
    std::vector<std::string> run_experiment(const std::string &name, const Config &config,
                                            const std::string &output_dir);
}

#endif
