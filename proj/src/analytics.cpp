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

#include "mmimo/analytics.hpp"

#include "mmimo/propagation.hpp"
#include "mmimo/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace mmimo
{
    namespace
    {
        constexpr double pi = std::numbers::pi;

        void require_convergent(const SystemConfig &c)
        {
            if (!(c.pathloss_exponent > 2.0))
                throw UnsupportedRegime("outer path loss integral diverges for gamma <= 2");
        }

        double radial_integral(const SystemConfig &c, double lo, double hi, int power)
        {
            // integrand in units of R: p(uR)^power * 2 pi u, integral scaled by R^2 by the caller
            auto f = [&](double u)
            {
                const double p = path_loss(u * c.cell_radius, c);
                return std::pow(p, power) * 2.0 * pi * u;
            };
            double error = 0.0;
            const double v =
                boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, lo, hi, 15, 1e-12, &error);
            if (!(error <= 1e-11 * std::abs(v)))
                throw std::runtime_error("geometry_integrals: quadrature did not converge");
            return v;
        }
    }

    GeometryIntegrals geometry_integrals(const SystemConfig &c, IntegralMethod method)
    {
        validate(c);
        require_convergent(c);
        const double g = c.pathloss_exponent;
        const double l = c.ref_distance / c.cell_radius;
        const double A0 = c.ref_gain;
        const double R2 = c.cell_radius * c.cell_radius;

        GeometryIntegrals out;
        if (method == IntegralMethod::closed_form)
        {
            out.inner = pi * R2 * A0 * l * l * (g - 2.0 * std::pow(l, g - 2.0)) / (g - 2.0);
            out.outer = pi * R2 * 2.0 * A0 * std::pow(l, g) / (g - 2.0);
            out.outer_sq = pi * R2 * A0 * A0 * std::pow(l, 2.0 * g) / (g - 1.0);
            return out;
        }

        // split at the kink d0 and at the window edge; tails beyond the window are analytic
        const double tf = c.trunc_factor;
        out.inner = R2 * (radial_integral(c, 0.0, l, 1) + radial_integral(c, l, 1.0, 1));
        const double tail = 2.0 * pi * A0 * std::pow(l, g) * std::pow(tf, 2.0 - g) / (g - 2.0);
        out.outer = R2 * (radial_integral(c, 1.0, tf, 1) + tail);
        const double tail_sq = 2.0 * pi * A0 * A0 * std::pow(l, 2.0 * g) * std::pow(tf, 2.0 - 2.0 * g) /
                               (2.0 * g - 2.0);
        out.outer_sq = R2 * (radial_integral(c, 1.0, tf, 2) + tail_sq);
        return out;
    }

    ShadowingMoments lognormal_moments(double shadowing_db)
    {
        const double s = shadowing_db / db_per_neper();
        return {std::exp(0.5 * s * s), std::exp(2.0 * s * s)};
    }

    MrcMeans mean_mrc_general(const SystemConfig &c, const ShadowingMoments &eta, const GeometryIntegrals &P)
    {
        const double lambda = 1.0 / (pi * c.cell_radius * c.cell_radius);
        const double M = c.antennas;
        const double K = c.pilots;
        const double m1sq = eta.mean * eta.mean;

        MrcMeans out;
        out.intra = lambda * lambda / M * m1sq * P.inner * ((K - 1.0) * P.inner + K * P.outer);
        out.inter = lambda / M * (m1sq * K * lambda * P.inner * P.outer + m1sq * K * lambda * P.outer * P.outer +
                                  eta.mean_sq * P.outer_sq);
        out.cont = (M - 1.0) / M * lambda * eta.mean_sq * P.outer_sq;
        return out;
    }

    MrcMeans mean_mrc_general(const SystemConfig &c)
    {
        return mean_mrc_general(c, lognormal_moments(c.shadowing_db),
                                geometry_integrals(c, IntegralMethod::quadrature));
    }

    MrcMeans mean_mrc_closed(const SystemConfig &c)
    {
        validate(c);
        require_convergent(c);
        const double g = c.pathloss_exponent;
        const double l = c.ref_distance / c.cell_radius;
        const double A0sq = c.ref_gain * c.ref_gain;
        const double M = c.antennas;
        const double K = c.pilots;
        const double mu = shadow_factor(c.shadowing_db);
        const double lg2 = std::pow(l, g - 2.0);
        const double l2g = std::pow(l, 2.0 * g);

        MrcMeans out;
        out.intra = std::pow(l, 4.0) * A0sq * mu / (M * (g - 2.0) * (g - 2.0)) * (g - 2.0 * lg2) *
                    ((K - 1.0) * g + 2.0 * lg2);
        out.inter = 2.0 * K * g * std::pow(l, g + 2.0) * A0sq * mu / (M * (g - 2.0) * (g - 2.0)) +
                    l2g * A0sq * mu * mu / (M * (g - 1.0));
        out.cont = (M - 1.0) * l2g * A0sq * mu * mu / (M * (g - 1.0));
        return out;
    }

    MrcVariances var_mrc(const SystemConfig &c)
    {
        validate(c);
        require_convergent(c);
        const double g = c.pathloss_exponent;
        const double l = c.ref_distance / c.cell_radius;
        const double A0_4 = std::pow(c.ref_gain, 4.0);
        const double M = c.antennas;
        const double K = c.pilots;
        const double mu = shadow_factor(c.shadowing_db);
        const double l4g = std::pow(l, 4.0 * g);
        const double a = g * std::pow(l, 2.0 - g);        // gamma l^(2-gamma)
        const double b = g * std::pow(l, 2.0 - 2.0 * g);  // gamma l^(2-2gamma)

        const double bracket = std::pow(mu, 6.0) / (2.0 * g - 1.0) +
                               4.0 * (a + 2.0 * K) * std::pow(mu, 3.0) / ((3.0 * g - 2.0) * (g - 2.0)) +
                               (K * b + 1.0) * mu * mu / ((g - 1.0) * (g - 1.0)) +
                               4.0 * K * (2.0 * a + K * b - 1.0) * mu / ((g - 1.0) * std::pow(g - 2.0, 2.0)) -
                               4.0 * K * K * std::pow(a - 2.0, 2.0) / std::pow(g - 2.0, 4.0);

        MrcVariances out;
        out.inter = l4g * A0_4 * mu * mu / (M * M) * bracket;
        out.cont = (M - 1.0) * (M - 1.0) * l4g * A0_4 * std::pow(mu, 8.0) / (M * M * (2.0 * g - 1.0));
        return out;
    }

    double zf_lower_bound(const SystemConfig &c)
    {
        validate(c);
        require_convergent(c);
        if (c.shadowing_db != 0.0)
            throw UnsupportedRegime("the ZF lower bound is only available without shadowing (sigma_dB = 0)");
        const double g = c.pathloss_exponent;
        const double l = c.ref_distance / c.cell_radius;
        const double A0sq = c.ref_gain * c.ref_gain;
        const double M = c.antennas;
        const double K = c.pilots;

        const double lead = 2.0 * K * g * std::pow(l, g + 2.0) * A0sq / ((M - K) * (g - 2.0) * (g - 2.0));
        const double braces = 1.0 - 2.0 * std::pow(l, g - 2.0) / (K * g) -
                              (K - 1.0) / (2.0 * K * (g + 2.0)) * (2.0 + g * std::pow(l, g + 2.0)) *
                                  ((g - 2.0) / (g - 1.0) + 4.0 / (g - 2.0));
        return lead * braces;
    }

    double zf_upper_bound(const SystemConfig &c)
    {
        const double M = c.antennas;
        const double K = c.pilots;
        return M / (M - K) * mean_mrc_closed(c).inter;
    }

    double zf_cont_mean(const SystemConfig &c)
    {
        validate(c);
        require_convergent(c);
        const double g = c.pathloss_exponent;
        const double l = c.ref_distance / c.cell_radius;
        const double mu = shadow_factor(c.shadowing_db);
        return mu * mu * std::pow(l, 2.0 * g) * c.ref_gain * c.ref_gain / (g - 1.0);
    }

    ZfBounds zf_bounds(const SystemConfig &c)
    {
        ZfBounds out;
        if (c.shadowing_db == 0.0)
            out.lower = zf_lower_bound(c);
        out.upper = zf_upper_bound(c);
        out.cont = zf_cont_mean(c);
        return out;
    }

    double dominance_threshold(const SystemConfig &c)
    {
        validate(c);
        const double g = c.pathloss_exponent;
        const double l = c.ref_distance / c.cell_radius;
        return g * g * (g - 1.0) / ((g - 2.0) * (g - 2.0)) * std::pow(l, 4.0 - 2.0 * g) /
               shadow_factor(c.shadowing_db);
    }

    double dominance_threshold_exact(const SystemConfig &c)
    {
        // E[cont]/E[intra] = (M - 1) X / Y with X, Y independent of M
        SystemConfig probe = c;
        probe.antennas = c.pilots + 1;
        const MrcMeans m = mean_mrc_closed(probe);
        const double M = probe.antennas;
        const double x = m.cont * M / (M - 1.0);
        const double y = m.intra * M;
        return (1.0 + y / x) / c.pilots;
    }

    std::optional<double> sigma_crossing(const SystemConfig &c, double lo, double hi, double tol)
    {
        auto gap = [&](double sigma)
        {
            SystemConfig s = c;
            s.shadowing_db = sigma;
            const MrcMeans m = mean_mrc_closed(s);
            return m.inter - m.cont;
        };
        double f_lo = gap(lo);
        const double f_hi = gap(hi);
        if (f_lo == 0.0)
            return lo;
        if (f_hi == 0.0)
            return hi;
        if ((f_lo > 0.0) == (f_hi > 0.0))
            return std::nullopt;
        while (hi - lo > tol)
        {
            const double mid = 0.5 * (lo + hi);
            const double f_mid = gap(mid);
            if ((f_mid > 0.0) == (f_lo > 0.0))
            {
                lo = mid;
                f_lo = f_mid;
            }
            else
                hi = mid;
        }
        return 0.5 * (lo + hi);
    }

    TruncationBound truncation_bound(const SystemConfig &c)
    {
        require_convergent(c);
        const double g = c.pathloss_exponent;
        TruncationBound t;
        t.outer = std::pow(c.trunc_factor, 2.0 - g);
        t.outer_sq = std::pow(c.trunc_factor, 2.0 - 2.0 * g);
        t.degenerate = t.outer > 0.1;
        return t;
    }

    double AsymptoticConstants::zf_intra_mean(int antennas, int pilots) const
    {
        return (a1 + (pilots - 1.0) * b1) / static_cast<double>(antennas - pilots);
    }

    double AsymptoticConstants::zf_inter_mean(int antennas, int pilots) const
    {
        return (a2 + (pilots - 1.0) * b2) / static_cast<double>(antennas - pilots);
    }

    AsymptoticConstants asymptotic_constants(const SystemConfig &c, std::int64_t trials)
    {
        const DerivedConstants d = validate(c);
        if (trials < 2)
            throw std::invalid_argument("asymptotic_constants: need at least two trials");

        SystemConfig single = c;
        single.pilots = 1;
        single.antennas = std::max(c.antennas, 2);
        // a stream family of its own, unrelated to the campaign trials of `c`
        std::uint64_t mix = c.seed ^ static_cast<std::uint64_t>(StreamTag::asymptotic);
        single.seed = splitmix64(mix);

        // running sums for alpha, e1 = (1-C_x) beta_x, e2 = sum_{Phi_k} (1-C) beta
        double s_alpha = 0, s_e1 = 0, s_e2 = 0, s_ae1 = 0, s_ae2 = 0;
        double s_aa = 0, s_11 = 0, s_22 = 0;
        for (std::int64_t t = 0; t < trials; ++t)
        {
            const LargeScaleState st = summarize_trial(single, static_cast<std::uint64_t>(t));
            const double alpha = st.alpha[0];
            const double e1 = st.intra[0].error_power;
            const double e2 = st.totals[0].error;
            s_alpha += alpha;
            s_e1 += e1;
            s_e2 += e2;
            s_ae1 += alpha * e1;
            s_ae2 += alpha * e2;
            s_aa += alpha * alpha;
            s_11 += e1 * e1;
            s_22 += e2 * e2;
        }

        const double n = static_cast<double>(trials);
        AsymptoticConstants out;
        out.trials = trials;
        const double ma = s_alpha / n, m1 = s_e1 / n, m2 = s_e2 / n;
        out.mean_alpha = ma;
        out.a1 = s_ae1 / n;
        out.a2 = s_ae2 / n;
        out.b1 = ma * m1;
        out.b2 = ma * m2;

        // delta method on the product of two sample means
        const double var_a = (s_aa / n - ma * ma) * n / (n - 1.0);
        const double var_1 = (s_11 / n - m1 * m1) * n / (n - 1.0);
        const double var_2 = (s_22 / n - m2 * m2) * n / (n - 1.0);
        const double cov_a1 = (s_ae1 / n - ma * m1) * n / (n - 1.0);
        const double cov_a2 = (s_ae2 / n - ma * m2) * n / (n - 1.0);
        out.b1_stderr = std::sqrt(std::max(0.0, m1 * m1 * var_a + ma * ma * var_1 + 2.0 * ma * m1 * cov_a1) / n);
        out.b2_stderr = std::sqrt(std::max(0.0, m2 * m2 * var_a + ma * ma * var_2 + 2.0 * ma * m2 * cov_a2) / n);

        const ShadowingMoments eta = lognormal_moments(c.shadowing_db);
        const GeometryIntegrals P = geometry_integrals(c, IntegralMethod::closed_form);
        const double li = d.intensity * eta.mean * P.inner;
        const double lo = d.intensity * eta.mean * P.outer;
        out.mrc_intra_per_kappa = li * (li + lo);
        out.mrc_inter_per_kappa = lo * (li + lo);
        return out;
    }

    AnalyticMoments analytic_moments(const SystemConfig &c)
    {
        AnalyticMoments m;
        m.integrals_closed = geometry_integrals(c, IntegralMethod::closed_form);
        m.integrals_quadrature = geometry_integrals(c, IntegralMethod::quadrature);
        m.mean_general = mean_mrc_general(c, lognormal_moments(c.shadowing_db), m.integrals_quadrature);
        m.mean_closed = mean_mrc_closed(c);
        m.variance = var_mrc(c);
        m.zf = zf_bounds(c);
        m.dominance_threshold = dominance_threshold(c);
        m.sigma_crossing = sigma_crossing(c);
        m.truncation = truncation_bound(c);
        return m;
    }

    namespace
    {
        nlohmann::json integrals_json(const GeometryIntegrals &p)
        {
            return {{"P_i", p.inner}, {"P_o", p.outer}, {"P_o2", p.outer_sq}};
        }

        nlohmann::json means_json(const MrcMeans &m)
        {
            return {{"intra", m.intra}, {"inter", m.inter}, {"cont", m.cont}};
        }
    }

    nlohmann::json to_json(const AnalyticMoments &m)
    {
        nlohmann::json j;
        j["integrals"] = {{"closed_form", integrals_json(m.integrals_closed)},
                          {"quadrature", integrals_json(m.integrals_quadrature)}};
        j["mean_mrc"] = {{"closed_form", means_json(m.mean_closed)}, {"general", means_json(m.mean_general)}};
        j["var_mrc"] = {{"inter", m.variance.inter}, {"cont", m.variance.cont}};
        j["normalized_var_mrc"] = {{"inter", m.variance.inter / (m.mean_closed.inter * m.mean_closed.inter)},
                                   {"cont", m.variance.cont / (m.mean_closed.cont * m.mean_closed.cont)}};
        j["zf"] = {{"lower", m.zf.lower ? nlohmann::json(*m.zf.lower) : nlohmann::json(nullptr)},
                   {"upper", m.zf.upper},
                   {"cont", m.zf.cont}};
        j["dominance_threshold_M_over_K"] = m.dominance_threshold;
        j["sigma_crossing_dB"] = m.sigma_crossing ? nlohmann::json(*m.sigma_crossing) : nlohmann::json(nullptr);
        j["truncation"] = {{"P_o_tail", m.truncation.outer},
                           {"P_o2_tail", m.truncation.outer_sq},
                           {"degenerate", m.truncation.degenerate}};
        return j;
    }

    nlohmann::json to_json(const AsymptoticConstants &a)
    {
        return {{"A1", a.a1},
                {"A2", a.a2},
                {"B1", a.b1},
                {"B2", a.b2},
                {"B1_stderr", a.b1_stderr},
                {"B2_stderr", a.b2_stderr},
                {"mean_alpha", a.mean_alpha},
                {"mrc_intra_per_kappa", a.mrc_intra_per_kappa},
                {"mrc_inter_per_kappa", a.mrc_inter_per_kappa},
                {"trials", a.trials}};
    }
}
