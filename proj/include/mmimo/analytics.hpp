// SPDX-License-Identifier: Apache-2.0
//
// mmimo-interference: uplink interference simulator for multi-cell massive MIMO
// Copyright (C) 2026 The mmimo-interference authors
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

// Closed-form spatial statistics of the fading-averaged interference under
// the PPP layout: mean and variance of the MRC components, ZF mean bounds,
// threshold and crossing points, and the fixed-load asymptotic constants.
//
// Units follow InterferenceSample: means are in linear power^2 (they scale
// with A0^2), variances in power^4.

#ifndef MMIMO_ANALYTICS_HPP
#define MMIMO_ANALYTICS_HPP

#include "mmimo/config.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>

#include <json.hpp>

namespace mmimo
{
    class UnsupportedRegime : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    enum class IntegralMethod
    {
        closed_form,
        quadrature
    };

    // Integrals of the path loss over the plane, in m^2:
    // inner = int_D p, outer = int_{R^2 \ D} p, outer_sq = int_{R^2 \ D} p^2.
    struct GeometryIntegrals
    {
        double inner = 0.0;
        double outer = 0.0;
        double outer_sq = 0.0;
    };

    // Quadrature integrates radially up to trunc_factor * R and adds the
    // analytic tail beyond it. gamma <= 2 is rejected by validate().
    GeometryIntegrals geometry_integrals(const SystemConfig &config,
                                         IntegralMethod method = IntegralMethod::closed_form);

    struct ShadowingMoments
    {
        double mean = 1.0;    // E{eta}
        double mean_sq = 1.0; // E{eta^2}
    };

    ShadowingMoments lognormal_moments(double shadowing_db);

    struct MrcMeans
    {
        double intra = 0.0;
        double inter = 0.0;
        double cont = 0.0;
    };

    struct MrcVariances
    {
        double inter = 0.0;
        double cont = 0.0;
    };

    // Means for an arbitrary shadowing law, from its first two moments and the
    // geometry integrals (Campbell + second factorial moment of the PPP).
    MrcMeans mean_mrc_general(const SystemConfig &config, const ShadowingMoments &shadowing,
                              const GeometryIntegrals &integrals);
    // log-normal shadowing, quadrature integrals
    MrcMeans mean_mrc_general(const SystemConfig &config);

    // Closed forms for the bounded power-law path loss with log-normal shadowing.
    MrcMeans mean_mrc_closed(const SystemConfig &config);

    MrcVariances var_mrc(const SystemConfig &config);

    // Mean ZF interference. `lower` exists only without shadowing; `upper`
    // bounds both the intra and the inter component and holds with shadowing.
    struct ZfBounds
    {
        std::optional<double> lower;
        double upper = 0.0;
        double cont = 0.0; // E[I_cont^ZF]
    };

    ZfBounds zf_bounds(const SystemConfig &config);
    // Throws UnsupportedRegime when shadowing_db > 0.
    double zf_lower_bound(const SystemConfig &config);
    double zf_upper_bound(const SystemConfig &config);
    double zf_cont_mean(const SystemConfig &config);

    // M/K at which E[I_cont^MRC] = E[I_intra^MRC], using the large-K,
    // small-l approximation of the ratio.
    double dominance_threshold(const SystemConfig &config);
    // Same crossing solved by bisection in M on the exact closed forms at the
    // configured K; returns M/K.
    double dominance_threshold_exact(const SystemConfig &config);

    // Shadowing level (dB) where E[I_inter^MRC] = E[I_cont^MRC], by bisection
    // on [lo_db, hi_db]. nullopt when the curves do not cross in range.
    std::optional<double> sigma_crossing(const SystemConfig &config, double lo_db = 0.0, double hi_db = 12.0,
                                         double tol_db = 0.01);

    // Tail fractions of the outer integrals beyond the simulation window.
    struct TruncationBound
    {
        double outer = 0.0;    // trunc_factor^(2 - gamma)
        double outer_sq = 0.0; // trunc_factor^(2 - 2 gamma)
        bool degenerate = false; // outer tail above 10 %: window far too small for this gamma
    };

    TruncationBound truncation_bound(const SystemConfig &config);

    // Fixed load factor kappa = K/M with M, K -> infinity.
    struct AsymptoticConstants
    {
        double a1 = 0.0, a2 = 0.0; // E{alpha (1-C_x) beta_x}, E{alpha sum_{Phi_k} (1-C) beta}
        double b1 = 0.0, b2 = 0.0; // E{alpha} E{(1-C_x) beta_x}, E{alpha} E{sum_{Phi_k} (1-C) beta}
        double b1_stderr = 0.0, b2_stderr = 0.0;
        double mean_alpha = 0.0;
        // closed-form MRC limits of E[I]/kappa
        double mrc_intra_per_kappa = 0.0;
        double mrc_inter_per_kappa = 0.0;
        std::int64_t trials = 0;

        double zf_intra_limit(double kappa) const { return kappa / (1.0 - kappa) * b1; }
        double zf_inter_limit(double kappa) const { return kappa / (1.0 - kappa) * b2; }
        double mrc_intra_limit(double kappa) const { return kappa * mrc_intra_per_kappa; }
        double mrc_inter_limit(double kappa) const { return kappa * mrc_inter_per_kappa; }
        // Finite-(M, K) ZF means implied by A and B.
        double zf_intra_mean(int antennas, int pilots) const;
        double zf_inter_mean(int antennas, int pilots) const;
    };

    // B1 and B2 have no closed form; they are estimated from `trials` single-group
    // spatial draws (uniform intra UE + one PPP reuse group, with shadowing).
    AsymptoticConstants asymptotic_constants(const SystemConfig &config, std::int64_t trials);

    struct AnalyticMoments
    {
        GeometryIntegrals integrals_closed;
        GeometryIntegrals integrals_quadrature;
        MrcMeans mean_general;
        MrcMeans mean_closed;
        MrcVariances variance;
        ZfBounds zf;
        double dominance_threshold = 0.0;
        std::optional<double> sigma_crossing;
        TruncationBound truncation;
    };

    AnalyticMoments analytic_moments(const SystemConfig &config);

    nlohmann::json to_json(const AnalyticMoments &m);
    nlohmann::json to_json(const AsymptoticConstants &a);
}

#endif
