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

#ifndef A2A_MIMO_SCENARIO_CONFIG_HPP
#define A2A_MIMO_SCENARIO_CONFIG_HPP

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "antenna.hpp"
#include "errors.hpp"
#include "network_geometry.hpp"
#include "propagation.hpp"
#include "receiver.hpp"
#include "text.hpp"

namespace a2a
{
    enum class YawMode
    {
        fixed,  // UE local axes parallel to global axes
        random  // one uniform yaw per UE, drawn after the placements
    };

    inline const char *to_string(YawMode m) { return m == YawMode::fixed ? "fixed" : "random"; }

    /*!MD
    # ScenarioConfig
    Full parameterization of one campaign

    Fields are kept in the units of the scenario file (km, degrees, mm) so that serialization is
    exact; `shell()`, `wavelength_m()` and friends convert to SI. Defaults reproduce the reference
    experiment: 1000 trials, 10 W, 2 GHz bandwidth, r in [0, 1] km, theta_max = 30 deg, T_mr = 276 K,
    2x2 UE arrays, 4x4 AP subarrays, 60 GHz clear-weather attenuation (14 dB/km).
    MD!*/
    struct ScenarioConfig
    {
        double carrier_hz = 60e9;
        double bandwidth_hz = 2e9;
        double p_tx_watts = 10.0;

        double r_min_km = 0.0;
        double r_max_km = 1.0;
        double theta_max_deg = 30.0;

        AtmosphereConfig atmosphere{14.0, 0.0, 0.0, 276.0};
        ReceiverNoiseConfig rx_noise{7.1};

        int ue_nx = 2, ue_ny = 2;
        int ap_nx = 4, ap_ny = 4;

        std::vector<int> n_ue_sweep{1, 2, 3, 4, 5, 6, 7, 8};
        int n_trials = 1000;
        std::uint64_t master_seed = 1;
        std::vector<Combiner> combiners{Combiner::mmse, Combiner::identity};

        ElementKind element = ElementKind::patch_two_slot;
        double patch_eps_r = 2.2;
        double patch_height_mm = 1.588;
        QuadratureResolution quadrature{};
        YawMode yaw = YawMode::fixed;

        ShellGeometry shell() const { return {r_min_km * 1000.0, r_max_km * 1000.0, theta_max_deg * pi / 180.0}; }
        double wavelength_m() const { return wavelength(carrier_hz); }
        PlanarArrayGeometry ue_array() const { return {ue_nx, ue_ny}; }
        PlanarArrayGeometry ap_subarray() const { return {ap_nx, ap_ny}; }

        LinkBudgetContext link_budget() const { return {p_tx_watts, bandwidth_hz, noise_psd(atmosphere, rx_noise)}; }

        ElementPattern element_pattern() const
        {
            switch (element)
            {
            case ElementKind::isotropic:
                return ElementPattern::isotropic();
            case ElementKind::hemispheric_cosine:
                return ElementPattern::hemispheric_cosine();
            case ElementKind::patch_two_slot:
                break;
            }
            return ElementPattern::patch({carrier_hz, patch_eps_r, patch_height_mm * 1e-3});
        }

        bool uses(Combiner c) const { return std::find(combiners.begin(), combiners.end(), c) != combiners.end(); }

        void validate() const;
    };

    namespace detail
    {
        inline std::string bound_message(const char *key, const std::string &value, const char *bound)
        {
            return std::string(key) + " = " + value + " violates " + bound;
        }

        inline void check(bool ok, const char *key, double value, const char *bound)
        {
            if (!ok)
                throw ConfigError(bound_message(key, text::format_double(value), bound));
        }
    }

    inline void ScenarioConfig::validate() const
    {
        using detail::check;
        check(carrier_hz > 0.0, "carrier_hz", carrier_hz, "carrier_hz > 0");
        check(bandwidth_hz > 0.0, "bandwidth_hz", bandwidth_hz, "bandwidth_hz > 0");
        check(p_tx_watts > 0.0, "p_tx_watts", p_tx_watts, "p_tx_watts > 0");
        check(r_min_km >= 0.0, "r_min_km", r_min_km, "r_min_km >= 0");
        if (!(r_min_km < r_max_km))
            throw ConfigError("r_min_km = " + text::format_double(r_min_km) + ", r_max_km = " + text::format_double(r_max_km) +
                              " violates r_min < r_max");
        check(theta_max_deg > 0.0 && theta_max_deg <= 90.0, "theta_max_deg", theta_max_deg, "0 < theta_max_deg <= 90");
        check(atmosphere.gamma_gases >= 0.0, "gamma_gases_db_per_km", atmosphere.gamma_gases, "gamma >= 0");
        check(atmosphere.gamma_fog >= 0.0, "gamma_fog_db_per_km", atmosphere.gamma_fog, "gamma >= 0");
        check(atmosphere.gamma_precipitation >= 0.0, "gamma_precipitation_db_per_km", atmosphere.gamma_precipitation, "gamma >= 0");
        check(atmosphere.mean_radiating_temperature >= 150.0 && atmosphere.mean_radiating_temperature <= 400.0, "t_mr_k",
              atmosphere.mean_radiating_temperature, "150 <= t_mr_k <= 400");
        check(rx_noise.noise_figure_db >= 0.0, "noise_figure_db", rx_noise.noise_figure_db, "noise_figure_db >= 0");
        check(ue_nx >= 1, "ue_nx", ue_nx, "ue_nx >= 1");
        check(ue_ny >= 1, "ue_ny", ue_ny, "ue_ny >= 1");
        check(ap_nx >= 1, "ap_nx", ap_nx, "ap_nx >= 1");
        check(ap_ny >= 1, "ap_ny", ap_ny, "ap_ny >= 1");
        check(n_trials >= 1, "n_trials", n_trials, "n_trials >= 1");
        if (n_ue_sweep.empty())
            throw ConfigError("n_ue_sweep must list at least one user count");
        std::set<int> seen;
        for (int n : n_ue_sweep)
        {
            check(n >= 1 && n <= 256, "n_ue_sweep", n, "1 <= n_ue <= 256");
            if (!seen.insert(n).second)
                throw ConfigError("n_ue_sweep lists " + std::to_string(n) + " twice");
        }
        if (combiners.empty())
            throw ConfigError("combiners must name at least one of mmse, identity");
        check(patch_eps_r >= 1.0, "patch_eps_r", patch_eps_r, "patch_eps_r >= 1");
        check(patch_height_mm > 0.0, "patch_height_mm", patch_height_mm, "patch_height_mm > 0");
        check(quadrature.n_theta >= 2, "quadrature_n_theta", quadrature.n_theta, "quadrature_n_theta >= 2");
        check(quadrature.n_phi >= 1, "quadrature_n_phi", quadrature.n_phi, "quadrature_n_phi >= 1");
        if (element == ElementKind::patch_two_slot)
            design_rectangular_patch({carrier_hz, patch_eps_r, patch_height_mm * 1e-3});
    }

    inline std::string format_sweep(const std::vector<int> &sweep)
    {
        std::string s;
        for (std::size_t i = 0; i < sweep.size(); ++i)
            s += (i ? "," : "") + std::to_string(sweep[i]);
        return s;
    }

    // Canonical key = value text; every key explicit, so parsing it back needs no preset.
    inline std::string serialize_scenario(const ScenarioConfig &c)
    {
        using text::format_double;
        std::ostringstream os;
        os << "carrier_hz = " << format_double(c.carrier_hz) << '\n'
           << "bandwidth_hz = " << format_double(c.bandwidth_hz) << '\n'
           << "p_tx_watts = " << format_double(c.p_tx_watts) << '\n'
           << "r_min_km = " << format_double(c.r_min_km) << '\n'
           << "r_max_km = " << format_double(c.r_max_km) << '\n'
           << "theta_max_deg = " << format_double(c.theta_max_deg) << '\n'
           << "gamma_gases_db_per_km = " << format_double(c.atmosphere.gamma_gases) << '\n'
           << "gamma_fog_db_per_km = " << format_double(c.atmosphere.gamma_fog) << '\n'
           << "gamma_precipitation_db_per_km = " << format_double(c.atmosphere.gamma_precipitation) << '\n'
           << "t_mr_k = " << format_double(c.atmosphere.mean_radiating_temperature) << '\n'
           << "noise_figure_db = " << format_double(c.rx_noise.noise_figure_db) << '\n'
           << "ue_nx = " << c.ue_nx << '\n'
           << "ue_ny = " << c.ue_ny << '\n'
           << "ap_nx = " << c.ap_nx << '\n'
           << "ap_ny = " << c.ap_ny << '\n'
           << "n_ue_sweep = " << format_sweep(c.n_ue_sweep) << '\n'
           << "n_trials = " << c.n_trials << '\n'
           << "master_seed = " << c.master_seed << '\n'
           << "combiners = ";
        for (std::size_t i = 0; i < c.combiners.size(); ++i)
            os << (i ? "," : "") << to_string(c.combiners[i]);
        os << '\n'
           << "element_pattern = " << to_string(c.element) << '\n'
           << "patch_eps_r = " << format_double(c.patch_eps_r) << '\n'
           << "patch_height_mm = " << format_double(c.patch_height_mm) << '\n'
           << "quadrature_n_theta = " << c.quadrature.n_theta << '\n'
           << "quadrature_n_phi = " << c.quadrature.n_phi << '\n'
           << "ue_yaw = " << to_string(c.yaw) << '\n';
        return os.str();
    }

    // FNV-1a over the canonical serialization, as 16 hex digits.
    inline std::string config_hash(const ScenarioConfig &c)
    {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (unsigned char ch : serialize_scenario(c))
        {
            h ^= ch;
            h *= 0x100000001b3ULL;
        }
        char buf[17];
        std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
        return buf;
    }
}

#endif
