// SPDX-License-Identifier: Apache-2.0
//
// a2a-mimo: Monte Carlo simulator for aerial mmWave MU-MIMO uplinks
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

#ifndef A2A_MIMO_TEXT_HPP
#define A2A_MIMO_TEXT_HPP

#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>

namespace a2a::text
{
    // Shortest representation that parses back to the same double.
    inline std::string format_double(double value)
    {
        if (std::isnan(value))
            return "nan";
        if (std::isinf(value))
            return value > 0 ? "inf" : "-inf";
        char buf[64];
        auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
        if (ec != std::errc())
            return std::to_string(value);
        return std::string(buf, end);
    }

    inline std::optional<double> parse_double(std::string_view s)
    {
        if (s == "inf")
            return HUGE_VAL;
        if (s == "-inf")
            return -HUGE_VAL;
        if (!s.empty() && s.front() == '+')
            s.remove_prefix(1);
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
        if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
            return std::nullopt;
        return value;
    }

    template <typename Int>
    std::optional<Int> parse_integer(std::string_view s)
    {
        Int value{};
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
        if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
            return std::nullopt;
        return value;
    }

    inline std::string_view trim(std::string_view s)
    {
        const auto is_space = [](char c)
        { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
        while (!s.empty() && is_space(s.front()))
            s.remove_prefix(1);
        while (!s.empty() && is_space(s.back()))
            s.remove_suffix(1);
        return s;
    }
}

#endif
