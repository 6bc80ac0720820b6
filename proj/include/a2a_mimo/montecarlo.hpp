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

#ifndef A2A_MIMO_MONTECARLO_HPP
#define A2A_MIMO_MONTECARLO_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "antenna.hpp"
#include "channel.hpp"
#include "network_geometry.hpp"
#include "random.hpp"
#include "receiver.hpp"
#include "scenario_config.hpp"

/*!SECTION
Monte Carlo campaigns
SECTION!*/

namespace a2a
{
    // Trial failure with enough context to reproduce it.
    class TrialError : public NumericalError
    {
    public:
        TrialError(const std::string &what, std::string hash, int n_ue, int trial)
            : NumericalError("trial " + std::to_string(trial) + " (n_ue = " + std::to_string(n_ue) + ", config " + hash +
                             ") failed: " + what),
              config_hash(std::move(hash)), n_ue(n_ue), trial(trial) {}

        std::string config_hash;
        int n_ue;
        int trial;
    };

    // Coupling matrices depend only on the array designs: built once, shared read-only.
    struct CampaignModels
    {
        ArrayModel ap;
        ArrayModel ue;
    };

    inline CampaignModels build_campaign_models(const ScenarioConfig &cfg)
    {
        const ElementPattern pattern = cfg.element_pattern();
        return {make_array_model(cfg.ap_subarray(), pattern, cfg.quadrature),
                make_array_model(cfg.ue_array(), pattern, cfg.quadrature)};
    }

    struct TrialResult
    {
        int n_ue = 0;
        int trial_index = 0;

        std::vector<double> sinr_mmse;
        std::vector<double> sinr_sdma;
        std::vector<double> per_user_rates_mmse; // bit/s
        std::vector<double> per_user_rates_sdma; // bit/s
        double sum_rate_mmse = 0.0;
        double sum_rate_sdma = 0.0;

        std::vector<double> ranges_m;
        std::vector<double> thetas_rad;
        int clamped_sinrs = 0;
        Eigen::MatrixXcd h;

        const std::vector<double> &rates(Combiner c) const { return c == Combiner::mmse ? per_user_rates_mmse : per_user_rates_sdma; }
        const std::vector<double> &sinrs(Combiner c) const { return c == Combiner::mmse ? sinr_mmse : sinr_sdma; }
        double sum_rate(Combiner c) const { return c == Combiner::mmse ? sum_rate_mmse : sum_rate_sdma; }
    };

    /*!MD
    # run_trial
    One network realization

    Draw order on the trial stream: n_ue placements (r, theta, phi each), then n_ue yaws when
    `yaw = random`, then the n_ue x n_ue link phases row-major. Both combiners are always evaluated.
    MD!*/
    template <Uniform64Engine E>
    TrialResult run_trial(const ScenarioConfig &cfg, const CampaignModels &models, int n_ue, int trial_index, E &rng)
    {
        const ShellGeometry shell = cfg.shell();
        std::vector<UePlacement> placements;
        placements.reserve(n_ue);
        for (int k = 0; k < n_ue; ++k)
            placements.push_back(sample_placement(rng, shell));

        std::vector<double> yaws;
        if (cfg.yaw == YawMode::random)
            for (int k = 0; k < n_ue; ++k)
                yaws.push_back(2.0 * pi * uniform01(rng));

        UplinkChannel ch = build_uplink_channel(placements, models.ap, models.ue, cfg.atmosphere, cfg.wavelength_m(), rng, yaws);
        const LinkBudgetContext ctx = cfg.link_budget();

        TrialResult r;
        r.n_ue = n_ue;
        r.trial_index = trial_index;
        const CombinerOutput mmse = sinr_mmse(ch, ctx);
        const CombinerOutput sdma = sinr_sdma(ch, ctx);
        r.sinr_mmse = mmse.sinr;
        r.sinr_sdma = sdma.sinr;
        r.clamped_sinrs = mmse.clamped;

        RateSet rm = achievable_rates(r.sinr_mmse, cfg.bandwidth_hz);
        RateSet rs = achievable_rates(r.sinr_sdma, cfg.bandwidth_hz);
        r.per_user_rates_mmse = std::move(rm.per_user);
        r.per_user_rates_sdma = std::move(rs.per_user);
        r.sum_rate_mmse = rm.sum;
        r.sum_rate_sdma = rs.sum;

        for (const LinkDiagnostics &link : ch.links)
        {
            r.ranges_m.push_back(link.placement.r);
            r.thetas_rad.push_back(link.placement.theta);
        }
        r.h = std::move(ch.h);
        return r;
    }

    // Trial on its own stream derived from (master_seed, n_ue, trial_index).
    inline TrialResult run_trial(const ScenarioConfig &cfg, const CampaignModels &models, int n_ue, int trial_index)
    {
        TrialStream rng = trial_stream(cfg.master_seed, std::uint64_t(n_ue), std::uint64_t(trial_index));
        try
        {
            return run_trial(cfg, models, n_ue, trial_index, rng);
        }
        catch (const std::exception &e)
        {
            throw TrialError(e.what(), config_hash(cfg), n_ue, trial_index);
        }
    }

    struct AggregateRow
    {
        int n_ue = 0;
        Combiner combiner = Combiner::mmse;
        int n_trials = 0;
        double mean_user_rate = 0.0;   // bit/s
        double stderr_user_rate = 0.0; // of the per-trial average user rate
        double mean_sum_rate = 0.0;    // bit/s
        double stderr_sum_rate = 0.0;
        std::vector<double> per_index_mean; // mean rate of user slot k
    };

    struct AggregateResult
    {
        std::vector<AggregateRow> rows; // ordered by (sweep position, combiner order)

        const AggregateRow &at(int n_ue, Combiner c) const
        {
            for (const auto &r : rows)
                if (r.n_ue == n_ue && r.combiner == c)
                    return r;
            throw std::out_of_range("no aggregate row for n_ue = " + std::to_string(n_ue));
        }
    };

    // Per-trial average user rate x_t; mean and standard error across trials.
    inline AggregateRow aggregate_trials(std::span<const TrialResult> trials, Combiner c)
    {
        AggregateRow row;
        row.combiner = c;
        row.n_trials = int(trials.size());
        if (trials.empty())
            return row;
        row.n_ue = trials.front().n_ue;
        row.per_index_mean.assign(row.n_ue, 0.0);

        const double t = double(trials.size());
        double sum_x = 0.0, sum_s = 0.0;
        for (const auto &tr : trials)
        {
            sum_s += tr.sum_rate(c);
            sum_x += tr.sum_rate(c) / row.n_ue;
            const auto &rates = tr.rates(c);
            for (int k = 0; k < row.n_ue; ++k)
                row.per_index_mean[k] += rates[k];
        }
        for (double &m : row.per_index_mean)
            m /= t;
        row.mean_user_rate = sum_x / t;
        row.mean_sum_rate = sum_s / t;

        if (trials.size() > 1)
        {
            double ss = 0.0;
            for (const auto &tr : trials)
            {
                const double d = tr.sum_rate(c) / row.n_ue - row.mean_user_rate;
                ss += d * d;
            }
            row.stderr_user_rate = std::sqrt(ss / (t - 1.0) / t);
            row.stderr_sum_rate = row.n_ue * row.stderr_user_rate;
        }
        return row;
    }

    struct CampaignOptions
    {
        int threads = 1;
    };

    struct CampaignResult
    {
        std::vector<TrialResult> trials; // ordered by (sweep position, trial index)
        AggregateResult aggregate;
    };

    /*!MD
    # run_campaign
    Runs `n_trials` trials for every user count in the sweep

    - Trial t at user count n uses `trial_stream(master_seed, n, t)`; results are stored by
      (sweep position, t) and reduced in that order, so any thread count gives identical output.
    - The first failure in that order is rethrown after all workers stop.
    MD!*/
    inline CampaignResult run_campaign(const ScenarioConfig &cfg, const CampaignModels &models, const CampaignOptions &opts = {})
    {
        cfg.validate();
        const std::size_t per_n = std::size_t(cfg.n_trials);
        const std::size_t total = cfg.n_ue_sweep.size() * per_n;

        CampaignResult out;
        out.trials.resize(total);
        std::vector<std::exception_ptr> errors(total);
        std::atomic<std::size_t> next{0};
        std::atomic<bool> failed{false};

        auto worker = [&]
        {
            for (std::size_t job; !failed.load(std::memory_order_relaxed) && (job = next.fetch_add(1)) < total;)
            {
                const int n_ue = cfg.n_ue_sweep[job / per_n];
                const int trial = int(job % per_n);
                try
                {
                    out.trials[job] = run_trial(cfg, models, n_ue, trial);
                }
                catch (...)
                {
                    errors[job] = std::current_exception();
                    failed = true;
                }
            }
        };

        const int threads = std::max(1, std::min<int>(opts.threads, int(total)));
        if (threads == 1)
            worker();
        else
        {
            std::vector<std::jthread> pool;
            for (int i = 0; i < threads; ++i)
                pool.emplace_back(worker);
        }

        for (const auto &e : errors)
            if (e)
                std::rethrow_exception(e);

        for (std::size_t s = 0; s < cfg.n_ue_sweep.size(); ++s)
        {
            std::span<const TrialResult> block(out.trials.data() + s * per_n, per_n);
            for (Combiner c : cfg.combiners)
                out.aggregate.rows.push_back(aggregate_trials(block, c));
        }
        return out;
    }

    inline CampaignResult run_campaign(const ScenarioConfig &cfg, const CampaignOptions &opts = {})
    {
        cfg.validate();
        return run_campaign(cfg, build_campaign_models(cfg), opts);
    }
}

#endif
