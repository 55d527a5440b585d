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

#include "chansim/output.hpp"
#include "chansim/errors.hpp"

#include <openssl/evp.h>

#include "json.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

namespace chansim
{
    void CsvTable::add_header(const std::string &key, const std::string &value)
    {
        header.emplace_back(key, value);
    }

    void CsvTable::add_row(std::vector<std::string> row)
    {
        if (row.size() != columns.size())
            throw ShapeError("csv: row has " + std::to_string(row.size()) + " fields, expected " +
                             std::to_string(columns.size()));
        rows.push_back(std::move(row));
    }

    const std::string *CsvTable::header_value(const std::string &key) const
    {
        for (const auto &[k, v] : header)
            if (k == key)
                return &v;
        return nullptr;
    }

    std::size_t CsvTable::column(const std::string &name) const
    {
        for (std::size_t i = 0; i < columns.size(); ++i)
            if (columns[i] == name)
                return i;
        throw ContractError("csv: no column '" + name + "'");
    }

    std::string format_number(double v)
    {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return buf;
    }

    namespace
    {
        std::string join(const std::vector<std::string> &v)
        {
            std::string s;
            for (std::size_t i = 0; i < v.size(); ++i)
            {
                if (v[i].find_first_of(",\n") != std::string::npos)
                    throw ContractError("csv: field contains a separator: '" + v[i] + "'");
                if (i)
                    s += ',';
                s += v[i];
            }
            return s;
        }

        std::vector<std::string> split(const std::string &line)
        {
            std::vector<std::string> out;
            std::stringstream ss(line);
            std::string f;
            while (std::getline(ss, f, ','))
                out.push_back(f);
            if (!line.empty() && line.back() == ',')
                out.emplace_back();
            return out;
        }
    }

    void write_csv(const CsvTable &t, const std::string &path)
    {
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw IoError("cannot write '" + path + "'");
        for (const auto &[k, v] : t.header)
            out << "# " << k << ": " << v << '\n';
        out << join(t.columns) << '\n';
        for (const auto &r : t.rows)
            out << join(r) << '\n';
        if (!out)
            throw IoError("write failed for '" + path + "'");
    }

    CsvTable read_csv(const std::string &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw IoError("cannot read '" + path + "'");
        CsvTable t;
        std::string line;
        std::size_t n = 0;
        while (std::getline(in, line))
        {
            ++n;
            if (line.rfind("# ", 0) == 0)
            {
                if (!t.columns.empty())
                    throw ParseError(path + ":" + std::to_string(n) + ": header after data", n);
                const auto colon = line.find(": ", 2);
                if (colon == std::string::npos)
                    throw ParseError(path + ":" + std::to_string(n) + ": header without ': '", n);
                t.header.emplace_back(line.substr(2, colon - 2), line.substr(colon + 2));
            }
            else if (t.columns.empty())
                t.columns = split(line);
            else
            {
                auto r = split(line);
                if (r.size() != t.columns.size())
                    throw ParseError(path + ":" + std::to_string(n) + ": wrong field count", n);
                t.rows.push_back(std::move(r));
            }
        }
        if (t.columns.empty())
            throw ParseError(path + ": no column row", n);
        return t;
    }

    std::string sha256_file(const std::string &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw IoError("cannot read '" + path + "'");
        std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
        if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1)
            throw Error("sha256: digest initialisation failed");
        char buf[65536];
        while (in)
        {
            in.read(buf, sizeof buf);
            if (in.gcount() > 0 && EVP_DigestUpdate(ctx.get(), buf, std::size_t(in.gcount())) != 1)
                throw Error("sha256: digest update failed");
        }
        unsigned char md[EVP_MAX_MD_SIZE];
        unsigned int len = 0;
        if (EVP_DigestFinal_ex(ctx.get(), md, &len) != 1)
            throw Error("sha256: digest finalisation failed");
        std::ostringstream os;
        for (unsigned int i = 0; i < len; ++i)
            os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
        return os.str();
    }

    void ensure_writable_dir(const std::string &dir)
    {
        namespace fs = std::filesystem;
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec || !fs::is_directory(dir))
            throw IoError("output directory '" + dir + "' cannot be created" + (ec ? ": " + ec.message() : ""));
        const fs::path probe = fs::path(dir) / ".chansim_write_probe";
        {
            std::ofstream out(probe, std::ios::binary);
            if (!out || !(out << "probe"))
                throw IoError("output directory '" + dir + "' is not writable");
        }
        fs::remove(probe, ec);
    }

    void write_manifest(const std::string &dir, const std::string &experiment, std::uint64_t seed,
                        const std::vector<std::pair<std::string, std::string>> &parameters,
                        const std::vector<std::string> &files)
    {
        namespace fs = std::filesystem;
        nlohmann::ordered_json j;
        j["experiment"] = experiment;
        j["seed"] = seed;
        auto &p = j["parameters"] = nlohmann::ordered_json::object();
        for (const auto &[k, v] : parameters)
            p[k] = v;
        auto &f = j["files"] = nlohmann::ordered_json::array();
        for (const auto &name : files)
        {
            const auto full = (fs::path(dir) / name).string();
            f.push_back({{"name", name}, {"sha256", sha256_file(full)}, {"bytes", fs::file_size(full)}});
        }
        const auto path = (fs::path(dir) / "manifest.json").string();
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw IoError("cannot write '" + path + "'");
        out << j.dump(2) << '\n';
    }
}
