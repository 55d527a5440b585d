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

#ifndef CHANSIM_ERRORS_HPP
#define CHANSIM_ERRORS_HPP

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace chansim
{
    // Base class of every error thrown by the library.
    class Error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Argument outside the mathematical domain of an operation (negative x, V <= 0, ...)
    class DomainError : public Error
    {
    public:
        using Error::Error;
    };

    // Caller broke a documented precondition (e.g. non-Hermitian input)
    class ContractError : public Error
    {
    public:
        using Error::Error;
    };

    // Matrix or array dimensions do not fit together
    class ShapeError : public Error
    {
    public:
        using Error::Error;
    };

    // Degenerate geometry or moments: coincident elements, zero power, R = 0
    class DegenerateError : public Error
    {
    public:
        using Error::Error;
    };

    class ConditioningError : public Error
    {
    public:
        ConditioningError(const std::string &what, double condition)
            : Error(what), condition_(condition) {}
        double condition() const noexcept { return condition_; }

    private:
        double condition_;
    };

    // Malformed text input. line() is 1-based, 0 when the error is not tied to a line.
    class ParseError : public Error
    {
    public:
        ParseError(const std::string &what, std::size_t line, std::string key = {})
            : Error(what), line_(line), key_(std::move(key)) {}
        std::size_t line() const noexcept { return line_; }
        const std::string &key() const noexcept { return key_; }

    private:
        std::size_t line_;
        std::string key_;
    };

    class IoError : public Error
    {
    public:
        using Error::Error;
    };

    // Warnings go through a process-wide sink; the default writes to stderr.
    using WarningSink = std::function<void(std::string_view)>;
    void set_warning_sink(WarningSink sink);
    void warn(std::string_view message);

    // Restores the previous sink on destruction. Handy in tests.
    class ScopedWarningSink
    {
    public:
        explicit ScopedWarningSink(WarningSink sink);
        ~ScopedWarningSink();
        ScopedWarningSink(const ScopedWarningSink &) = delete;
        ScopedWarningSink &operator=(const ScopedWarningSink &) = delete;

    private:
        WarningSink previous_;
    };
}

#endif
