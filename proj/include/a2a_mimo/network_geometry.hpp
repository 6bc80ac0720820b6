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

#ifndef A2A_MIMO_NETWORK_GEOMETRY_HPP
#define A2A_MIMO_NETWORK_GEOMETRY_HPP

#include <cmath>
#include <string>

#include "antenna.hpp"
#include "errors.hpp"
#include "random.hpp"

namespace a2a
{
    // Spherical-cone shell below the AP. The global frame has the AP at the origin and +z pointing
    // toward decreasing altitude.
    struct ShellGeometry
    {
        double r_min = 0.0;          // m
        double r_max = 1000.0;       // m
        double theta_max = pi / 6.0; // rad

        void validate() const
        {
            if (!(r_min >= 0.0))
                throw ConfigError("shell r_min must be >= 0");
            if (!(r_max > r_min))
                throw ConfigError("shell needs r_min < r_max (got r_min = " + std::to_string(r_min) +
                                  " m, r_max = " + std::to_string(r_max) + " m)");
            if (!(theta_max > 0.0 && theta_max <= pi / 2))
                throw ConfigError("shell theta_max must lie in (0, pi/2]");
        }
    };

    struct UePlacement
    {
        double r = 0.0;
        double theta = 0.0;
        double phi = 0.0;

        Eigen::Vector3d position() const { return r * Bearing{theta, phi}.direction(); }
    };

    struct LinkBearings
    {
        Bearing ap; // AP -> UE, AP subarray frame
        Bearing ue; // UE -> AP, UE array frame
    };

    // Uniform position in the shell by inverse-CDF sampling of the independent marginals
    //   f_r ~ r^2, f_theta ~ sin(theta), f_phi uniform.
    // Draw order per UE: r, theta, phi. A draw with r == 0 is rejected and redrawn as a whole.
    template <Uniform64Engine E>
    UePlacement sample_placement(E &rng, const ShellGeometry &shell)
    {
        const double rmin3 = shell.r_min * shell.r_min * shell.r_min;
        const double rmax3 = shell.r_max * shell.r_max * shell.r_max;
        const double one_minus_cos_max = 2.0 * std::pow(std::sin(shell.theta_max / 2.0), 2);
        for (;;)
        {
            const double u1 = uniform01(rng);
            const double u2 = uniform01(rng);
            const double u3 = uniform01(rng);

            UePlacement p;
            p.r = std::cbrt(u1 * (rmax3 - rmin3) + rmin3);
            p.theta = std::acos(1.0 - u2 * one_minus_cos_max);
            p.phi = 2.0 * pi * u3;
            if (p.r > 0.0)
                return p;
        }
    }

    /*!MD
    # link_bearings
    TX/RX bearings of one UE link in each array's local frame

    - AP subarray: boresight +z (down), local x/y parallel to global x/y.
    - UE array: boresight -z (up). With `ue_yaw = 0` its local x/y axes are parallel to the global
      x/y axes; a nonzero yaw rotates them about the boresight by `ue_yaw` (counterclockwise seen
      from local x toward local y).
    - In each frame, theta is the angle from the boresight and phi is atan2 of the projections on
      local y and local x. At zero yaw this gives ue = (theta, phi + pi mod 2 pi).
    MD!*/
    inline LinkBearings link_bearings(const UePlacement &p, double ue_yaw = 0.0)
    {
        LinkBearings out;
        out.ap = Bearing{p.theta, p.phi};

        double phi_ue = std::fmod(p.phi + pi - ue_yaw, 2.0 * pi);
        if (phi_ue < 0.0)
            phi_ue += 2.0 * pi;
        if (phi_ue >= 2.0 * pi)
            phi_ue = 0.0;
        out.ue = Bearing{p.theta, phi_ue};
        return out;
    }
}

#endif
