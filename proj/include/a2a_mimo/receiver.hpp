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

#ifndef A2A_MIMO_RECEIVER_HPP
#define A2A_MIMO_RECEIVER_HPP

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <cmath>
#include <numeric>
#include <span>
#include <string_view>
#include <vector>

#include "channel.hpp"
#include "errors.hpp"

namespace a2a
{
    struct LinkBudgetContext
    {
        double p_tx = 10.0;      // W per UE
        double bandwidth = 2e9;  // Hz
        double noise_psd = 0.0;  // W/Hz

        // P_tx / (N_o B)
        double snr() const { return p_tx / (noise_psd * bandwidth); }

        void validate() const
        {
            detail::require_positive(p_tx, "transmit power");
            detail::require_positive(bandwidth, "bandwidth");
            detail::require_positive(noise_psd, "noise PSD");
        }
    };

    enum class Combiner
    {
        mmse,
        identity
    };

    inline constexpr std::string_view to_string(Combiner c) { return c == Combiner::mmse ? "mmse" : "identity"; }

    struct CombinerOutput
    {
        std::vector<double> sinr; // linear, per user
        Combiner kind = Combiner::mmse;
        int clamped = 0; // entries lifted from a negative rounding residue to 0
    };

    namespace detail
    {
        // LLT of sqrt(SNR)^2 H^H H + I, the SNR-normalized regularized Gram matrix.
        inline Eigen::LLT<Eigen::MatrixXcd> normalized_gram(const Eigen::MatrixXcd &h, double snr)
        {
            const Eigen::Index n = h.cols();
            Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(n, n);
            m.selfadjointView<Eigen::Lower>().rankUpdate(h.adjoint(), snr);
            m = m.selfadjointView<Eigen::Lower>();
            Eigen::LLT<Eigen::MatrixXcd> llt(m);
            if (llt.info() != Eigen::Success)
                throw NumericalError("regularized Gram matrix factorization failed");
            return llt;
        }

        inline void check_inputs(const Eigen::MatrixXcd &h, const LinkBudgetContext &ctx)
        {
            ctx.validate();
            if (h.rows() == 0 || h.cols() == 0 || !h.allFinite())
                throw DomainError("channel matrix must be nonempty and finite");
        }
    }

    // W^H = (I/SNR + H^H H)^-1 H^H
    inline Eigen::MatrixXcd mmse_combiner(const Eigen::MatrixXcd &h, const LinkBudgetContext &ctx)
    {
        detail::check_inputs(h, ctx);
        const double snr = ctx.snr();
        // (I/SNR + H^H H)^-1 = SNR (I + SNR H^H H)^-1
        return snr * detail::normalized_gram(h, snr).solve(h.adjoint());
    }

    inline Eigen::MatrixXcd mmse_combiner(const UplinkChannel &ch, const LinkBudgetContext &ctx) { return mmse_combiner(ch.h, ctx); }

    // rho_k = SNR / [(H^H H + I/SNR)^-1]_kk - 1 = 1 / [(I + SNR H^H H)^-1]_kk - 1
    inline CombinerOutput sinr_mmse(const Eigen::MatrixXcd &h, const LinkBudgetContext &ctx)
    {
        detail::check_inputs(h, ctx);
        const Eigen::Index n = h.cols();
        const auto llt = detail::normalized_gram(h, ctx.snr());

        CombinerOutput out;
        out.kind = Combiner::mmse;
        out.sinr.resize(n);
        Eigen::VectorXcd e = Eigen::VectorXcd::Zero(n);
        for (Eigen::Index k = 0; k < n; ++k)
        {
            e.setZero();
            e[k] = 1.0;
            const double diag = std::real(llt.solve(e)[k]);
            double rho = 1.0 / diag - 1.0;
            if (rho < 0.0)
            {
                rho = 0.0;
                ++out.clamped;
            }
            out.sinr[k] = rho;
        }
        return out;
    }

    inline CombinerOutput sinr_mmse(const UplinkChannel &ch, const LinkBudgetContext &ctx) { return sinr_mmse(ch.h, ctx); }

    // Identity combining: stream k is subarray k's output; other users leak in along row k.
    inline CombinerOutput sinr_sdma(const Eigen::MatrixXcd &h, const LinkBudgetContext &ctx)
    {
        detail::check_inputs(h, ctx);
        if (h.rows() != h.cols())
            throw DomainError("identity combining needs one subarray per UE (square H)");
        const double snr = ctx.snr();
        CombinerOutput out;
        out.kind = Combiner::identity;
        out.sinr.resize(h.cols());
        for (Eigen::Index k = 0; k < h.cols(); ++k)
        {
            const double signal = std::norm(h(k, k));
            double interference = 0.0;
            for (Eigen::Index j = 0; j < h.cols(); ++j)
                if (j != k)
                    interference += std::norm(h(k, j));
            out.sinr[k] = snr * signal / (1.0 + snr * interference);
        }
        return out;
    }

    inline CombinerOutput sinr_sdma(const UplinkChannel &ch, const LinkBudgetContext &ctx) { return sinr_sdma(ch.h, ctx); }

    struct RateSet
    {
        std::vector<double> per_user; // bit/s
        double sum = 0.0;             // bit/s
    };

    // C = B log2(1 + rho)
    inline RateSet achievable_rates(std::span<const double> sinrs, double bandwidth)
    {
        detail::require_positive(bandwidth, "bandwidth");
        RateSet out;
        out.per_user.reserve(sinrs.size());
        for (double rho : sinrs)
        {
            if (!(rho >= 0.0))
                throw DomainError("SINR must be >= 0");
            out.per_user.push_back(bandwidth * std::log2(1.0 + rho));
        }
        out.sum = std::accumulate(out.per_user.begin(), out.per_user.end(), 0.0);
        return out;
    }
}

#endif
