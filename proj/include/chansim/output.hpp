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

#ifndef CHANSIM_OUTPUT_HPP
#define CHANSIM_OUTPUT_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace chansim
{
    // CSV with self-describing "# key: value" header rows, one column-name row, then data.
    // Numbers are written with 17 significant digits so a round trip is exact.
    struct CsvTable
    {
        std::vector<std::pair<std::string, std::string>> header;
        std::vector<std::string> columns;
        std::vector<std::vector<std::string>> rows;

        void add_header(const std::string &key, const std::string &value);
        void add_row(std::vector<std::string> row); // ShapeError if the width differs
        const std::string *header_value(const std::string &key) const;
        std::size_t column(const std::string &name) const; // ContractError when absent
    };

    std::string format_number(double v);

    void write_csv(const CsvTable &t, const std::string &path);
    CsvTable read_csv(const std::string &path);

    // Lower-case hex SHA-256 of a file's bytes.
    std::string sha256_file(const std::string &path);

    // Creates the directory if needed and proves it writable with a probe file.
    void ensure_writable_dir(const std::string &dir);

    struct ManifestFile
    {
        std::string name; // relative to the output directory
        std::string sha256;
        std::size_t bytes = 0;
    };

    // manifest.json: experiment, seed, every resolved parameter, and the written files.
    void write_manifest(const std::string &dir, const std::string &experiment, std::uint64_t seed,
                        const std::vector<std::pair<std::string, std::string>> &parameters,
                        const std::vector<std::string> &files);
}

#endif
