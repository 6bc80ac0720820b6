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

#ifndef A2A_MIMO_SCENARIO_IO_HPP
#define A2A_MIMO_SCENARIO_IO_HPP

#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "scenario_config.hpp"

/*!MD
# Scenario files

Plain text, one `key = value` per line. `#` starts a comment; blank lines are ignored. Every key
is optional and unknown keys are rejected. `weather` selects a preset that sets `carrier_hz`, the
three `gamma_*` components and `t_mr_k`; any of those keys given explicitly win over the preset,
regardless of line order.

| key                              | default        | notes                                   |
|----------------------------------|----------------|-----------------------------------------|
| weather                          | 60ghz_clear    | 38.5ghz_clear, 60ghz_clear, 68ghz_clear |
| carrier_hz                       | 6e10           |                                         |
| bandwidth_hz                     | 2e9            |                                         |
| p_tx_watts                       | 10             | per UE                                  |
| r_min_km, r_max_km               | 0, 1           |                                         |
| theta_max_deg                    | 30             |                                         |
| gamma_gases_db_per_km            | 14             | via the weather preset                  |
| gamma_fog_db_per_km              | 0              |                                         |
| gamma_precipitation_db_per_km    | 0              |                                         |
| t_mr_k                           | 276            |                                         |
| noise_figure_db                  | 7.1            |                                         |
| ue_nx, ue_ny                     | 2, 2           |                                         |
| ap_nx, ap_ny                     | 4, 4           | one subarray per UE                     |
| n_ue_sweep                       | 1..8           | list and ranges, e.g. `1..4,8`          |
| n_trials                         | 1000           |                                         |
| master_seed                      | 1              | unsigned 64-bit                         |
| combiners                        | mmse,identity  | `sdma` is accepted for identity         |
| element_pattern                  | patch          | patch, isotropic, cosine                |
| patch_eps_r, patch_height_mm     | 2.2, 1.588     |                                         |
| quadrature_n_theta, _n_phi       | 180, 360       |                                         |
| ue_yaw                           | fixed          | fixed, random                           |
MD!*/

namespace a2a
{
    inline constexpr std::array<std::string_view, 26> scenario_keys{
        "weather", "carrier_hz", "bandwidth_hz", "p_tx_watts", "r_min_km", "r_max_km", "theta_max_deg",
        "gamma_gases_db_per_km", "gamma_fog_db_per_km", "gamma_precipitation_db_per_km", "t_mr_k", "noise_figure_db",
        "ue_nx", "ue_ny", "ap_nx", "ap_ny", "n_ue_sweep", "n_trials", "master_seed", "combiners", "element_pattern",
        "patch_eps_r", "patch_height_mm", "quadrature_n_theta", "quadrature_n_phi", "ue_yaw"};

    // Raw key/value pairs, keyed by name. Application order does not matter.
    using ScenarioEntries = std::map<std::string, std::string, std::less<>>;

    namespace detail
    {
        inline bool known_key(std::string_view k)
        {
            return std::find(scenario_keys.begin(), scenario_keys.end(), k) != scenario_keys.end();
        }

        inline std::vector<std::string_view> split_list(std::string_view s)
        {
            std::vector<std::string_view> out;
            while (true)
            {
                const auto pos = s.find(',');
                out.push_back(text::trim(s.substr(0, pos)));
                if (pos == std::string_view::npos)
                    break;
                s.remove_prefix(pos + 1);
            }
            return out;
        }

        [[noreturn]] inline void bad_value(std::string_view key, std::string_view value, std::string_view expected)
        {
            throw ConfigError("key '" + std::string(key) + "': expected " + std::string(expected) + ", got '" +
                              std::string(value) + "'");
        }

        inline double to_double(std::string_view key, std::string_view v)
        {
            auto d = text::parse_double(v);
            if (!d || !std::isfinite(*d))
                bad_value(key, v, "a finite number");
            return *d;
        }

        inline int to_int(std::string_view key, std::string_view v)
        {
            auto i = text::parse_integer<int>(v);
            if (!i)
                bad_value(key, v, "an integer");
            return *i;
        }

        inline std::vector<int> to_sweep(std::string_view key, std::string_view v)
        {
            std::vector<int> out;
            for (std::string_view item : split_list(v))
            {
                const auto dots = item.find("..");
                if (dots == std::string_view::npos)
                {
                    out.push_back(to_int(key, item));
                    continue;
                }
                const int lo = to_int(key, text::trim(item.substr(0, dots)));
                const int hi = to_int(key, text::trim(item.substr(dots + 2)));
                if (hi < lo || hi - lo > 1024)
                    bad_value(key, item, "an increasing range lo..hi");
                for (int n = lo; n <= hi; ++n)
                    out.push_back(n);
            }
            return out;
        }

        inline std::vector<Combiner> to_combiners(std::string_view key, std::string_view v)
        {
            std::vector<Combiner> out;
            for (std::string_view item : split_list(v))
            {
                Combiner c;
                if (item == "mmse")
                    c = Combiner::mmse;
                else if (item == "identity" || item == "sdma")
                    c = Combiner::identity;
                else
                    bad_value(key, item, "mmse or identity");
                if (std::find(out.begin(), out.end(), c) != out.end())
                    bad_value(key, v, "each combiner at most once");
                out.push_back(c);
            }
            return out;
        }

        inline void apply_entry(ScenarioConfig &c, std::string_view key, std::string_view v)
        {
            if (key == "weather")
                return; // applied first, separately
            else if (key == "carrier_hz")
                c.carrier_hz = to_double(key, v);
            else if (key == "bandwidth_hz")
                c.bandwidth_hz = to_double(key, v);
            else if (key == "p_tx_watts")
                c.p_tx_watts = to_double(key, v);
            else if (key == "r_min_km")
                c.r_min_km = to_double(key, v);
            else if (key == "r_max_km")
                c.r_max_km = to_double(key, v);
            else if (key == "theta_max_deg")
                c.theta_max_deg = to_double(key, v);
            else if (key == "gamma_gases_db_per_km")
                c.atmosphere.gamma_gases = to_double(key, v);
            else if (key == "gamma_fog_db_per_km")
                c.atmosphere.gamma_fog = to_double(key, v);
            else if (key == "gamma_precipitation_db_per_km")
                c.atmosphere.gamma_precipitation = to_double(key, v);
            else if (key == "t_mr_k")
                c.atmosphere.mean_radiating_temperature = to_double(key, v);
            else if (key == "noise_figure_db")
                c.rx_noise.noise_figure_db = to_double(key, v);
            else if (key == "ue_nx")
                c.ue_nx = to_int(key, v);
            else if (key == "ue_ny")
                c.ue_ny = to_int(key, v);
            else if (key == "ap_nx")
                c.ap_nx = to_int(key, v);
            else if (key == "ap_ny")
                c.ap_ny = to_int(key, v);
            else if (key == "n_ue_sweep")
                c.n_ue_sweep = to_sweep(key, v);
            else if (key == "n_trials")
                c.n_trials = to_int(key, v);
            else if (key == "master_seed")
            {
                auto s = text::parse_integer<std::uint64_t>(v);
                if (!s)
                    bad_value(key, v, "an unsigned 64-bit integer");
                c.master_seed = *s;
            }
            else if (key == "combiners")
                c.combiners = to_combiners(key, v);
            else if (key == "element_pattern")
            {
                if (v == "patch")
                    c.element = ElementKind::patch_two_slot;
                else if (v == "isotropic")
                    c.element = ElementKind::isotropic;
                else if (v == "cosine")
                    c.element = ElementKind::hemispheric_cosine;
                else
                    bad_value(key, v, "patch, isotropic or cosine");
            }
            else if (key == "patch_eps_r")
                c.patch_eps_r = to_double(key, v);
            else if (key == "patch_height_mm")
                c.patch_height_mm = to_double(key, v);
            else if (key == "quadrature_n_theta")
                c.quadrature.n_theta = to_int(key, v);
            else if (key == "quadrature_n_phi")
                c.quadrature.n_phi = to_int(key, v);
            else if (key == "ue_yaw")
            {
                if (v == "fixed")
                    c.yaw = YawMode::fixed;
                else if (v == "random")
                    c.yaw = YawMode::random;
                else
                    bad_value(key, v, "fixed or random");
            }
            else
                throw ConfigError("unknown key '" + std::string(key) + "'");
        }
    }

    // Syntax pass only: key/value pairs with duplicate and unknown-key checks.
    inline ScenarioEntries read_scenario_entries(std::string_view content, std::string_view origin = "<config>")
    {
        ScenarioEntries entries;
        std::size_t line_no = 0;
        while (!content.empty())
        {
            ++line_no;
            const auto eol = content.find('\n');
            std::string_view line = content.substr(0, eol);
            content.remove_prefix(eol == std::string_view::npos ? content.size() : eol + 1);

            if (const auto hash = line.find('#'); hash != std::string_view::npos)
                line = line.substr(0, hash);
            line = text::trim(line);
            if (line.empty())
                continue;

            const std::string where = std::string(origin) + ":" + std::to_string(line_no) + ": ";
            const auto eq = line.find('=');
            if (eq == std::string_view::npos)
                throw ConfigError(where + "syntax error, expected 'key = value'");
            const std::string key(text::trim(line.substr(0, eq)));
            const std::string value(text::trim(line.substr(eq + 1)));
            if (key.empty() || value.empty())
                throw ConfigError(where + "syntax error, empty key or value");
            if (!detail::known_key(key))
                throw ConfigError(where + "unknown key '" + key + "'");
            if (!entries.emplace(key, value).second)
                throw ConfigError(where + "duplicate key '" + key + "'");
        }
        return entries;
    }

    // "key=value" command-line override; replaces any file entry with the same key. "seed" is
    // accepted as an alias of master_seed.
    inline void apply_override(ScenarioEntries &entries, std::string_view assignment)
    {
        const auto eq = assignment.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("override '" + std::string(assignment) + "' is not of the form key=value");
        const std::string key(text::trim(assignment.substr(0, eq)));
        const std::string value(text::trim(assignment.substr(eq + 1)));
        if (!detail::known_key(key) && key != "seed")
            throw ConfigError("override names unknown key '" + key + "'");
        if (value.empty())
            throw ConfigError("override for '" + key + "' has an empty value");
        entries.insert_or_assign(key == "seed" ? std::string("master_seed") : key, value);
    }

    // Defaults, then the weather preset, then every other key; validated.
    inline ScenarioConfig build_scenario(const ScenarioEntries &entries)
    {
        ScenarioConfig cfg;
        if (auto it = entries.find("weather"); it != entries.end())
        {
            const auto preset = find_weather_preset(it->second);
            if (!preset)
                detail::bad_value("weather", it->second, "one of 38.5ghz_clear, 60ghz_clear, 68ghz_clear");
            cfg.carrier_hz = preset->carrier_hz;
            cfg.atmosphere = preset->atmosphere;
        }
        for (const auto &[key, value] : entries)
            detail::apply_entry(cfg, key, value);
        cfg.validate();
        return cfg;
    }

    inline ScenarioConfig parse_scenario_text(std::string_view content, std::span<const std::string> overrides = {},
                                              std::string_view origin = "<config>")
    {
        ScenarioEntries entries = read_scenario_entries(content, origin);
        for (const std::string &o : overrides)
            apply_override(entries, o);
        return build_scenario(entries);
    }

    inline std::string read_text_file(const std::string &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw ConfigError("cannot open scenario file '" + path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    inline ScenarioConfig parse_scenario(const std::string &path, std::span<const std::string> overrides = {})
    {
        return parse_scenario_text(read_text_file(path), overrides, path);
    }
}

#endif
