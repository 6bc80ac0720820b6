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

#ifndef A2A_MIMO_CHANNEL_HPP
#define A2A_MIMO_CHANNEL_HPP

#include <cmath>
#include <span>
#include <vector>

#include "antenna.hpp"
#include "errors.hpp"
#include "network_geometry.hpp"
#include "propagation.hpp"
#include "random.hpp"

/*!SECTION
Uplink MU-MIMO digital channel
SECTION!*/

namespace a2a
{
    // alpha = sqrt(G_rx G_tx L) (lambda / 4 pi)
    inline double large_scale_coefficient(double g_rx, double g_tx, double loss, double wavelength_m)
    {
        if (!(g_rx >= 0.0) || !(g_tx >= 0.0) || !(loss >= 0.0))
            throw DomainError("large-scale coefficient needs nonnegative gains and loss");
        detail::require_positive(wavelength_m, "wavelength");
        return std::sqrt(g_rx * g_tx * loss) * (wavelength_m / (4.0 * pi));
    }

    struct LinkDiagnostics
    {
        UePlacement placement;
        LinkBearings bearings;
        double ue_yaw = 0.0;
        double loss = 0.0;    // L(r), linear
        double ap_gain = 0.0; // serving subarray gain toward its UE, linear
        double ue_gain = 0.0; // UE array gain toward the AP, linear
    };

    // Rows index AP subarrays, columns index UEs; subarray k serves UE k.
    struct UplinkChannel
    {
        Eigen::MatrixXcd h;
        double wavelength_m = 0.0;
        std::vector<LinkDiagnostics> links;
        std::vector<BeamWeights> ap_weights; // w_i
        std::vector<BeamWeights> ue_weights; // f_k

        Eigen::Index n_ue() const { return h.cols(); }
    };

    /*!MD
    # build_uplink_channel_with_phases
    Fills H_UL from placements, array models, and given small-scale phases

    - w_i maximizes the directivity of subarray i toward UE i; f_k that of UE k toward the AP.
    - Entry (i, k) is
      sqrt(RQ_a(w_i, A_a(b_a,k)) RQ_u(f_k, A_u(b_u,k))) sqrt(L(r_k)) lambda |F_a(b_a,k) F_u(b_u,k)| e^{j beta_ik}
      where RQ is the generalized Rayleigh quotient w^H A w / w^H Q w.
    - `phases` is n_ue x n_ue in radians; `ue_yaw` is empty (all zero) or one yaw per UE.
    MD!*/
    inline UplinkChannel build_uplink_channel_with_phases(std::span<const UePlacement> placements, const ArrayModel &ap,
                                                          const ArrayModel &ue, const AtmosphereConfig &atmosphere,
                                                          double wavelength_m, const Eigen::MatrixXd &phases,
                                                          std::span<const double> ue_yaw = {})
    {
        const Eigen::Index n = Eigen::Index(placements.size());
        if (n < 1)
            throw DomainError("uplink channel needs at least one UE");
        if (phases.rows() != n || phases.cols() != n)
            throw DomainError("phase matrix must be n_ue x n_ue");
        if (!ue_yaw.empty() && Eigen::Index(ue_yaw.size()) != n)
            throw DomainError("ue_yaw must be empty or hold one yaw per UE");
        detail::require_positive(wavelength_m, "wavelength");

        UplinkChannel ch;
        ch.wavelength_m = wavelength_m;
        ch.h.resize(n, n);
        ch.links.resize(n);
        ch.ap_weights.reserve(n);
        ch.ue_weights.reserve(n);

        const double gamma = atmosphere.total_gamma();
        std::vector<Eigen::VectorXcd> a_ap(n);
        std::vector<double> f_ap(n), ue_factor(n);

        for (Eigen::Index k = 0; k < n; ++k)
        {
            LinkDiagnostics &link = ch.links[k];
            link.placement = placements[k];
            link.ue_yaw = ue_yaw.empty() ? 0.0 : ue_yaw[k];
            link.bearings = link_bearings(link.placement, link.ue_yaw);
            link.loss = path_loss(link.placement.r, gamma);

            ch.ap_weights.push_back(max_directivity_weights(ap.coupling, link.bearings.ap));
            ch.ue_weights.push_back(max_directivity_weights(ue.coupling, link.bearings.ue));

            a_ap[k] = steering_vector(ap.geometry, link.bearings.ap);
            f_ap[k] = ap.pattern.amplitude(link.bearings.ap);

            const double rq_ue = rayleigh_quotient(ue.coupling, ch.ue_weights[k], steering_vector(ue.geometry, link.bearings.ue));
            ue_factor[k] = std::sqrt(rq_ue) * ue.pattern.amplitude(link.bearings.ue) * std::sqrt(link.loss) * wavelength_m;

            link.ue_gain = 4.0 * pi * rq_ue * ue.pattern.intensity(link.bearings.ue);
        }

        for (Eigen::Index i = 0; i < n; ++i)
        {
            const double den = ap.coupling.quadratic_form(ch.ap_weights[i].w);
            for (Eigen::Index k = 0; k < n; ++k)
            {
                const double rq_ap = std::norm(ch.ap_weights[i].w.dot(a_ap[k])) / den;
                const double magnitude = std::sqrt(rq_ap) * f_ap[k] * ue_factor[k];
                ch.h(i, k) = std::polar(magnitude, phases(i, k));
                if (i == k)
                    ch.links[k].ap_gain = 4.0 * pi * rq_ap * f_ap[k] * f_ap[k];
            }
        }
        return ch;
    }

    // Draws beta_ik uniform on [0, 2 pi) in row-major order (i outer, k inner).
    template <Uniform64Engine E>
    Eigen::MatrixXd draw_link_phases(E &rng, Eigen::Index n_ue)
    {
        Eigen::MatrixXd phases(n_ue, n_ue);
        for (Eigen::Index i = 0; i < n_ue; ++i)
            for (Eigen::Index k = 0; k < n_ue; ++k)
                phases(i, k) = 2.0 * pi * uniform01(rng);
        return phases;
    }

    // Phases come from `rng` after whatever the caller has already drawn (placements, yaws).
    template <Uniform64Engine E>
    UplinkChannel build_uplink_channel(std::span<const UePlacement> placements, const ArrayModel &ap, const ArrayModel &ue,
                                       const AtmosphereConfig &atmosphere, double wavelength_m, E &rng,
                                       std::span<const double> ue_yaw = {})
    {
        const Eigen::MatrixXd phases = draw_link_phases(rng, Eigen::Index(placements.size()));
        return build_uplink_channel_with_phases(placements, ap, ue, atmosphere, wavelength_m, phases, ue_yaw);
    }

    inline void write_channel_csv(std::ostream &os, const Eigen::MatrixXcd &h, long long n_ue, long long trial, bool header)
    {
        if (header)
            os << "n_ue,trial,row,col,re,im\n";
        for (Eigen::Index i = 0; i < h.rows(); ++i)
            for (Eigen::Index k = 0; k < h.cols(); ++k)
                os << n_ue << ',' << trial << ',' << i << ',' << k << ',' << text::format_double(h(i, k).real()) << ','
                   << text::format_double(h(i, k).imag()) << '\n';
    }
}

#endif
