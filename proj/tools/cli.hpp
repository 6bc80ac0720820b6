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

#ifndef A2A_MIMO_TOOLS_CLI_HPP
#define A2A_MIMO_TOOLS_CLI_HPP

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include <a2a_mimo/a2a_mimo.hpp>

namespace a2a::cli
{
    namespace fs = std::filesystem;

    struct RunArgs
    {
        std::string config;
        std::string out_dir;
        std::vector<std::string> overrides;
        std::optional<std::uint64_t> seed;
        int threads = 0; // 0: hardware concurrency
        bool dump_channels = false;
        bool dump_antenna = false;
        bool quiet = false;
    };

    struct LinkBudgetArgs
    {
        double p_tx_w = 10.0;
        double g_tx = 1.0;
        double g_rx = 1.0;
        double carrier_hz = 60e9;
        std::optional<double> wavelength_m;
        double range_m = 1000.0;
        double gamma_db_per_km = 0.0;
        std::optional<double> loss;
        double t_mr_k = 276.0;
        double noise_figure_db = 7.1;
        double bandwidth_hz = 2e9;
    };

    inline ScenarioConfig load_config(const std::string &path, std::vector<std::string> overrides, std::optional<std::uint64_t> seed)
    {
        if (seed)
            overrides.push_back("master_seed=" + std::to_string(*seed));
        if (path.empty())
            return parse_scenario_text("", overrides, "<defaults>");
        return parse_scenario(path, overrides);
    }

    // Files are written under temporary names and renamed once every table is complete; on any
    // failure nothing (new) is left behind.
    class OutputSet
    {
    public:
        explicit OutputSet(fs::path dir) : dir_(std::move(dir)) {}

        ~OutputSet()
        {
            if (committed_)
                return;
            std::error_code ec;
            for (const auto &[tmp, final_name] : files_)
                fs::remove(tmp, ec);
        }

        std::ofstream open(const std::string &name)
        {
            fs::path tmp = dir_ / (name + ".partial");
            files_.emplace_back(tmp, dir_ / name);
            std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
            if (!os)
                throw std::runtime_error("cannot write " + tmp.string());
            return os;
        }

        void commit()
        {
            for (const auto &[tmp, final_name] : files_)
                fs::rename(tmp, final_name);
            committed_ = true;
        }

    private:
        fs::path dir_;
        std::vector<std::pair<fs::path, fs::path>> files_;
        bool committed_ = false;
    };

    inline void print_summary(std::ostream &out, const ScenarioConfig &cfg, const AggregateResult &agg)
    {
        out << "carrier " << cfg.carrier_hz / 1e9 << " GHz, gamma " << cfg.atmosphere.total_gamma() << " dB/km, "
            << cfg.n_trials << " trials per user count\n";
        out << std::setw(5) << "n_ue" << std::setw(10) << "combiner" << std::setw(16) << "user [Gbit/s]" << std::setw(14)
            << "stderr" << std::setw(16) << "sum [Gbit/s]" << '\n';
        for (const AggregateRow &r : agg.rows)
            out << std::setw(5) << r.n_ue << std::setw(10) << to_string(r.combiner) << std::fixed << std::setprecision(4)
                << std::setw(16) << r.mean_user_rate / 1e9 << std::setw(14) << r.stderr_user_rate / 1e9 << std::setw(16)
                << r.mean_sum_rate / 1e9 << '\n'
                << std::defaultfloat;
    }

    inline int command_run(const RunArgs &args, std::ostream &out)
    {
        const ScenarioConfig cfg = load_config(args.config, args.overrides, args.seed);
        const int threads = args.threads > 0 ? args.threads : int(std::max(1u, std::thread::hardware_concurrency()));

        fs::create_directories(args.out_dir);
        OutputSet files(args.out_dir);

        const auto start = std::chrono::steady_clock::now();
        const CampaignModels models = build_campaign_models(cfg);
        const CampaignResult result = run_campaign(cfg, models, {threads});
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        {
            auto os = files.open("trials.csv");
            write_trials_table(os, cfg, result);
        }
        {
            auto os = files.open("summary.csv");
            write_summary_table(os, result.aggregate);
        }
        {
            auto os = files.open("manifest.txt");
            write_manifest(os, cfg, wall, threads);
        }
        if (args.dump_channels)
        {
            auto os = files.open("channels.csv");
            write_channel_dump(os, result);
        }
        if (args.dump_antenna)
        {
            const std::vector<double> cuts{0.0, 45.0, 90.0};
            for (const auto &[name, model] : {std::pair{"ap", &models.ap}, std::pair{"ue", &models.ue}})
            {
                auto q = files.open(std::string("q_") + name + ".csv");
                write_matrix_csv(q, model->coupling.matrix());
                auto g = files.open(std::string("gain_cut_") + name + ".csv");
                write_gain_cut_csv(g, *model, max_directivity_weights(model->coupling, Bearing{}), cuts);
            }
        }
        files.commit();

        if (!args.quiet)
        {
            print_summary(out, cfg, result.aggregate);
            out << "wrote " << args.out_dir << " in " << std::fixed << std::setprecision(2) << wall << " s\n"
                << std::defaultfloat;
        }
        return 0;
    }

    inline int command_linkbudget(const LinkBudgetArgs &a, std::ostream &out)
    {
        using text::format_double;
        const double lambda = a.wavelength_m ? *a.wavelength_m : wavelength(a.carrier_hz);
        detail::require_positive(lambda, "wavelength");
        const double loss = a.loss ? *a.loss : path_loss(a.range_m, a.gamma_db_per_km);
        const double p_rx = friis_received_power(a.p_tx_w, a.g_tx, a.g_rx, lambda, loss);

        AtmosphereConfig atm{a.gamma_db_per_km, 0.0, 0.0, a.t_mr_k};
        const double n0 = noise_psd(atm, ReceiverNoiseConfig{a.noise_figure_db});
        detail::require_positive(a.bandwidth_hz, "bandwidth");
        const double noise = n0 * a.bandwidth_hz;
        const double snr = p_rx / noise;
        const double rate = achievable_rates(std::vector<double>{snr}, a.bandwidth_hz).sum;

        out << "wavelength_m = " << format_double(lambda) << '\n'
            << "path_loss = " << format_double(loss) << '\n'
            << "path_loss_db = " << format_double(to_db(loss)) << '\n'
            << "p_rx_w = " << format_double(p_rx) << '\n'
            << "noise_psd_w_per_hz = " << format_double(n0) << '\n'
            << "noise_power_w = " << format_double(noise) << '\n'
            << "snr = " << format_double(snr) << '\n'
            << "snr_db = " << format_double(to_db(snr)) << '\n'
            << "rate_bps = " << format_double(rate) << '\n';
        return 0;
    }

    inline int command_validate(const std::string &config, const std::vector<std::string> &overrides,
                                std::optional<std::uint64_t> seed, std::ostream &out)
    {
        const ScenarioConfig cfg = load_config(config, overrides, seed);
        out << "# config_hash: " << config_hash(cfg) << '\n' << serialize_scenario(cfg);
        return 0;
    }

    inline int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
    {
        CLI::App app{"Monte Carlo rate simulator for aerial mmWave MU-MIMO uplinks"};
        app.require_subcommand(1);
        app.set_version_flag("--version", std::string(version_string));

        RunArgs run;
        auto *run_cmd = app.add_subcommand("run", "Run a campaign and write trials.csv, summary.csv, manifest.txt");
        run_cmd->add_option("--config", run.config, "Scenario file (defaults apply when omitted)");
        run_cmd->add_option("--out", run.out_dir, "Output directory")->required();
        run_cmd->add_option("--set", run.overrides, "Override key=value (repeatable)");
        run_cmd->add_option("--seed", run.seed, "Master seed (overrides master_seed)");
        run_cmd->add_option("--threads", run.threads, "Worker threads (default: hardware concurrency)")->check(CLI::NonNegativeNumber);
        run_cmd->add_flag("--dump-channels", run.dump_channels, "Also write every H_UL to channels.csv");
        run_cmd->add_flag("--dump-antenna", run.dump_antenna, "Also write coupling matrices and broadside gain cuts");
        run_cmd->add_flag("--quiet", run.quiet, "No summary on stdout");

        LinkBudgetArgs lb;
        std::string weather;
        auto *lb_cmd = app.add_subcommand("linkbudget", "Single point-to-point link budget");
        lb_cmd->add_option("--p-tx-w", lb.p_tx_w, "Transmit power [W]")->capture_default_str();
        lb_cmd->add_option("--g-tx", lb.g_tx, "Transmit gain (linear)")->capture_default_str();
        lb_cmd->add_option("--g-rx", lb.g_rx, "Receive gain (linear)")->capture_default_str();
        lb_cmd->add_option("--carrier-hz", lb.carrier_hz, "Carrier frequency [Hz]")->capture_default_str();
        lb_cmd->add_option("--wavelength-m", lb.wavelength_m, "Wavelength [m] (overrides --carrier-hz)");
        lb_cmd->add_option("--range-m", lb.range_m, "Link range [m]")->capture_default_str();
        lb_cmd->add_option("--gamma-db-per-km", lb.gamma_db_per_km, "Specific attenuation [dB/km]")->capture_default_str();
        lb_cmd->add_option("--weather", weather, "Preset for carrier, attenuation and T_mr");
        lb_cmd->add_option("--loss", lb.loss, "Linear path loss L (overrides range and attenuation)");
        lb_cmd->add_option("--t-mr-k", lb.t_mr_k, "Mean radiating temperature [K]")->capture_default_str();
        lb_cmd->add_option("--noise-figure-db", lb.noise_figure_db, "Receiver noise figure [dB]")->capture_default_str();
        lb_cmd->add_option("--bandwidth-hz", lb.bandwidth_hz, "Bandwidth [Hz]")->capture_default_str();

        std::string val_config;
        std::vector<std::string> val_overrides;
        std::optional<std::uint64_t> val_seed;
        auto *val_cmd = app.add_subcommand("validate", "Parse and validate a scenario; print its canonical form");
        val_cmd->add_option("--config", val_config, "Scenario file");
        val_cmd->add_option("--set", val_overrides, "Override key=value (repeatable)");
        val_cmd->add_option("--seed", val_seed, "Master seed");

        try
        {
            app.parse(argc, argv);
        }
        catch (const CLI::ParseError &e)
        {
            return app.exit(e, out, err);
        }

        try
        {
            if (*run_cmd)
                return command_run(run, out);
            if (*lb_cmd)
            {
                if (!weather.empty())
                {
                    const auto preset = find_weather_preset(weather);
                    if (!preset)
                        throw ConfigError("unknown weather preset '" + weather + "'");
                    if (lb_cmd->count("--carrier-hz") == 0)
                        lb.carrier_hz = preset->carrier_hz;
                    if (lb_cmd->count("--gamma-db-per-km") == 0)
                        lb.gamma_db_per_km = preset->atmosphere.total_gamma();
                    if (lb_cmd->count("--t-mr-k") == 0)
                        lb.t_mr_k = preset->atmosphere.mean_radiating_temperature;
                }
                return command_linkbudget(lb, out);
            }
            if (*val_cmd)
                return command_validate(val_config, val_overrides, val_seed, out);
        }
        catch (const std::exception &e)
        {
            err << "error: " << e.what() << '\n';
            return 1;
        }
        return 1;
    }
}

#endif
