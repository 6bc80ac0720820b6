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

#ifndef A2A_MIMO_PROPAGATION_HPP
#define A2A_MIMO_PROPAGATION_HPP

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "antenna.hpp"
#include "errors.hpp"

namespace a2a
{
    inline constexpr double boltzmann = 1.380649e-23;      // W / (K Hz)
    inline constexpr double reference_temperature = 290.0; // K

    // Specific attenuation components in dB/km; constant throughout the shell.
    struct AtmosphereConfig
    {
        double gamma_gases = 0.0;
        double gamma_fog = 0.0;
        double gamma_precipitation = 0.0;
        double mean_radiating_temperature = 276.0; // K

        double total_gamma() const { return gamma_gases + gamma_fog + gamma_precipitation; }

        void validate() const
        {
            if (!(gamma_gases >= 0.0) || !(gamma_fog >= 0.0) || !(gamma_precipitation >= 0.0))
                throw ConfigError("specific attenuation components must be >= 0 dB/km");
            if (!(mean_radiating_temperature >= 150.0 && mean_radiating_temperature <= 400.0))
                throw ConfigError("mean radiating temperature must lie in [150, 400] K (got " +
                                  std::to_string(mean_radiating_temperature) + ")");
        }
    };

    struct ReceiverNoiseConfig
    {
        double noise_figure_db = 7.1;

        // T_o (10^(eta/10) - 1)
        double receiver_temperature() const { return reference_temperature * (std::pow(10.0, noise_figure_db / 10.0) - 1.0); }

        void validate() const
        {
            if (!(noise_figure_db >= 0.0))
                throw ConfigError("noise figure must be >= 0 dB");
        }
    };

    // Clear-weather operating points; the whole specific attenuation is booked as gases.
    struct WeatherPreset
    {
        std::string_view name;
        double carrier_hz;
        AtmosphereConfig atmosphere;
    };

    inline constexpr std::array<WeatherPreset, 3> weather_presets{{
        {"38.5ghz_clear", 38.5e9, {0.15, 0.0, 0.0, 276.0}},
        {"60ghz_clear", 60e9, {14.0, 0.0, 0.0, 276.0}},
        {"68ghz_clear", 68e9, {0.87, 0.0, 0.0, 276.0}},
    }};

    inline std::optional<WeatherPreset> find_weather_preset(std::string_view name)
    {
        for (const auto &p : weather_presets)
            if (p.name == name)
                return p;
        return std::nullopt;
    }

    inline double wavelength(double carrier_hz)
    {
        detail::require_positive(carrier_hz, "carrier frequency");
        return speed_of_light / carrier_hz;
    }

    // L(r) = 10^(-r gamma / 10) / r^2, gamma given in dB/km.
    inline double path_loss(double range_m, double gamma_db_per_km)
    {
        if (!(range_m > 0.0))
            throw DomainError("path loss needs range > 0 m (got " + std::to_string(range_m) + ")");
        if (!(gamma_db_per_km >= 0.0))
            throw DomainError("specific attenuation must be >= 0 dB/km");
        const double gamma_per_m = gamma_db_per_km / 1000.0;
        return std::pow(10.0, -range_m * gamma_per_m / 10.0) / (range_m * range_m);
    }

    inline double path_loss_db(double range_m, double gamma_db_per_km)
    {
        if (!(range_m > 0.0))
            throw DomainError("path loss needs range > 0 m (got " + std::to_string(range_m) + ")");
        return -(20.0 * std::log10(range_m) + gamma_db_per_km * range_m / 1000.0);
    }

    inline double friis_received_power(double p_tx, double g_tx, double g_rx, double wavelength_m, double loss)
    {
        detail::require_positive(p_tx, "transmit power");
        detail::require_positive(g_tx, "transmit gain");
        detail::require_positive(g_rx, "receive gain");
        detail::require_positive(wavelength_m, "wavelength");
        detail::require_positive(loss, "path loss");
        const double f = wavelength_m / (4.0 * pi);
        return p_tx * g_tx * g_rx * f * f * loss;
    }

    // N_o = k (T_mr + T_o (10^(eta/10) - 1)), with the antenna temperature taken as T_mr.
    inline double noise_psd(const AtmosphereConfig &atmosphere, const ReceiverNoiseConfig &rx)
    {
        atmosphere.validate();
        rx.validate();
        return boltzmann * (atmosphere.mean_radiating_temperature + rx.receiver_temperature());
    }
}

#endif
