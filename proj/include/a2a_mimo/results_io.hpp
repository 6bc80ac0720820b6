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

#ifndef A2A_MIMO_RESULTS_IO_HPP
#define A2A_MIMO_RESULTS_IO_HPP

#include <cmath>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "montecarlo.hpp"
#include "scenario_config.hpp"
#include "text.hpp"
#include "version.hpp"

namespace a2a
{
    inline constexpr std::string_view trials_header = "n_ue,trial,user_index,combiner,sinr_db,rate_bps,range_m,theta_deg";
    inline constexpr std::string_view summary_header = "n_ue,combiner,mean_user_rate_bps,stderr,mean_sum_rate_bps,n_trials";

    inline double to_db(double linear) { return 10.0 * std::log10(linear); }

    // One row per (trial, user, combiner), in campaign order.
    inline void write_trials_table(std::ostream &os, const ScenarioConfig &cfg, const CampaignResult &result)
    {
        using text::format_double;
        os << trials_header << '\n';
        for (const TrialResult &t : result.trials)
            for (int k = 0; k < t.n_ue; ++k)
                for (Combiner c : cfg.combiners)
                    os << t.n_ue << ',' << t.trial_index << ',' << k << ',' << to_string(c) << ','
                       << format_double(to_db(t.sinrs(c)[k])) << ',' << format_double(t.rates(c)[k]) << ','
                       << format_double(t.ranges_m[k]) << ',' << format_double(t.thetas_rad[k] * 180.0 / pi) << '\n';
    }

    inline void write_summary_table(std::ostream &os, const AggregateResult &agg)
    {
        using text::format_double;
        os << summary_header << '\n';
        for (const AggregateRow &r : agg.rows)
            os << r.n_ue << ',' << to_string(r.combiner) << ',' << format_double(r.mean_user_rate) << ','
               << format_double(r.stderr_user_rate) << ',' << format_double(r.mean_sum_rate) << ',' << r.n_trials << '\n';
    }

    // The manifest is itself a scenario file: comment lines carry the run metadata and the body is
    // the canonical configuration, so `run --config manifest.txt` reproduces the tables.
    inline void write_manifest(std::ostream &os, const ScenarioConfig &cfg, double wall_time_s, int threads)
    {
        os << "# a2a-mimo run manifest\n"
           << "# version: " << version_string << '\n'
           << "# config_hash: " << config_hash(cfg) << '\n'
           << "# threads: " << threads << '\n'
           << "# wall_time_s: " << text::format_double(wall_time_s) << '\n'
           << serialize_scenario(cfg);
    }

    inline void write_channel_dump(std::ostream &os, const CampaignResult &result)
    {
        bool header = true;
        for (const TrialResult &t : result.trials)
        {
            write_channel_csv(os, t.h, t.n_ue, t.trial_index, header);
            header = false;
        }
    }

    // Minimal reader for the comma-separated tables written above (no quoting is ever needed).
    inline std::vector<std::vector<std::string>> read_table(std::string_view content)
    {
        std::vector<std::vector<std::string>> rows;
        while (!content.empty())
        {
            const auto eol = content.find('\n');
            std::string_view line = content.substr(0, eol);
            content.remove_prefix(eol == std::string_view::npos ? content.size() : eol + 1);
            if (line.empty())
                continue;
            std::vector<std::string> cells;
            while (true)
            {
                const auto comma = line.find(',');
                cells.emplace_back(line.substr(0, comma));
                if (comma == std::string_view::npos)
                    break;
                line.remove_prefix(comma + 1);
            }
            rows.push_back(std::move(cells));
        }
        return rows;
    }
}

#endif
