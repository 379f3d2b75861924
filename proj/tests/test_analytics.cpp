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

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace mmimo;

namespace
{
    constexpr double pi = std::numbers::pi;
    const double xi = 10.0 / std::log(10.0);

    SystemConfig cfg(int M, int K, double l, double gamma, double sigma)
    {
        SystemConfig c = reference_config();
        c.antennas = M;
        c.pilots = K;
        c.ref_distance = l * c.cell_radius;
        c.pathloss_exponent = gamma;
        c.shadowing_db = sigma;
        return c;
    }

    // direct radial integrals, written out per segment
    GeometryIntegrals integrals_by_hand(const SystemConfig &c)
    {
        const double A0 = c.ref_gain, d0 = c.ref_distance, R = c.cell_radius, g = c.pathloss_exponent;
        GeometryIntegrals out;
        out.inner = A0 * pi * d0 * d0 + 2.0 * pi * A0 * std::pow(d0, g) *
                                            (std::pow(R, 2.0 - g) - std::pow(d0, 2.0 - g)) / (2.0 - g);
        out.outer = 2.0 * pi * A0 * std::pow(d0, g) * std::pow(R, 2.0 - g) / (g - 2.0);
        out.outer_sq = 2.0 * pi * A0 * A0 * std::pow(d0, 2.0 * g) * std::pow(R, 2.0 - 2.0 * g) / (2.0 * g - 2.0);
        return out;
    }

    double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
}

TEST_CASE("geometry integrals: closed form, quadrature and direct evaluation agree")
{
    for (double g : {2.5, 3.0, 3.76, 4.0, 5.0})
        for (double l : {0.1, 0.2, 0.5})
        {
            const SystemConfig c = cfg(128, 10, l, g, 0.0);
            const GeometryIntegrals h = integrals_by_hand(c);
            const GeometryIntegrals a = geometry_integrals(c, IntegralMethod::closed_form);
            const GeometryIntegrals q = geometry_integrals(c, IntegralMethod::quadrature);
            CHECK(rel(a.inner, h.inner) < 1e-12);
            CHECK(rel(a.outer, h.outer) < 1e-12);
            CHECK(rel(a.outer_sq, h.outer_sq) < 1e-12);
            CHECK(rel(q.inner, h.inner) < 1e-10);
            CHECK(rel(q.outer, h.outer) < 1e-10);
            CHECK(rel(q.outer_sq, h.outer_sq) < 1e-10);
        }
    CHECK_THROWS_AS(geometry_integrals(cfg(128, 10, 0.2, 2.0, 0.0)), ConfigError);
}

TEST_CASE("normalized geometry constants of the reference geometry")
{
    const SystemConfig c = reference_config();
    const double lambda = 1.0 / (pi * c.cell_radius * c.cell_radius);
    const GeometryIntegrals P = geometry_integrals(c);
    CHECK(lambda * P.inner == doctest::Approx(8.27791e-5).epsilon(1e-5));
    CHECK(lambda * P.outer == doctest::Approx(2.67541e-6).epsilon(1e-5));
}

TEST_CASE("log-normal moments")
{
    const ShadowingMoments m = lognormal_moments(8.0);
    CHECK(m.mean == doctest::Approx(5.455407918702321).epsilon(1e-13));
    CHECK(m.mean_sq == doctest::Approx(885.7454274751439).epsilon(1e-13));
    CHECK(lognormal_moments(0.0).mean == 1.0);
    CHECK(lognormal_moments(0.0).mean_sq == 1.0);
}

TEST_CASE("general means equal the closed forms over the parameter grid")
{
    double worst = 0.0;
    for (double g : {2.5, 3.0, 3.76, 4.0, 5.0})
        for (double l : {0.1, 0.2, 0.5})
            for (double s : {0.0, 3.0, 8.0})
            {
                const SystemConfig c = cfg(128, 10, l, g, s);
                const MrcMeans a = mean_mrc_general(c);
                const MrcMeans b = mean_mrc_closed(c);
                worst = std::max({worst, rel(a.intra, b.intra), rel(a.inter, b.inter), rel(a.cont, b.cont)});
            }
    CHECK(worst < 1e-9);
}

TEST_CASE("closed-form means against the printed expressions")
{
    const double M = 64, K = 7, l = 0.3, g = 4.2, s = 5.0;
    const SystemConfig c = cfg(64, 7, l, g, s);
    const double A = c.ref_gain, mu = std::exp(s * s / (xi * xi));
    const MrcMeans m = mean_mrc_closed(c);
    const double intra = std::pow(l, 4) * A * A * mu / (M * (g - 2) * (g - 2)) * (g - 2 * std::pow(l, g - 2)) *
                         ((K - 1) * g + 2 * std::pow(l, g - 2));
    const double inter = 2 * K * g * std::pow(l, g + 2) * A * A * mu / (M * (g - 2) * (g - 2)) +
                         std::pow(l, 2 * g) * A * A * mu * mu / (M * (g - 1));
    const double cont = (M - 1) * std::pow(l, 2 * g) * A * A * mu * mu / (M * (g - 1));
    CHECK(rel(m.intra, intra) < 1e-13);
    CHECK(rel(m.inter, inter) < 1e-13);
    CHECK(rel(m.cont, cont) < 1e-13);
}

TEST_CASE("means scale with A0^2, variances with A0^4")
{
    SystemConfig a = cfg(128, 10, 0.2, 3.76, 3.0);
    SystemConfig b = a;
    b.ref_gain = 3.0 * a.ref_gain;
    const MrcMeans ma = mean_mrc_closed(a), mb = mean_mrc_closed(b);
    CHECK(rel(mb.intra, 9 * ma.intra) < 1e-13);
    CHECK(rel(mb.inter, 9 * ma.inter) < 1e-13);
    CHECK(rel(mb.cont, 9 * ma.cont) < 1e-13);
    CHECK(rel(var_mrc(b).inter, 81 * var_mrc(a).inter) < 1e-12);
    CHECK(rel(var_mrc(b).cont, 81 * var_mrc(a).cont) < 1e-12);
    CHECK(rel(zf_upper_bound(b), 9 * zf_upper_bound(a)) < 1e-13);
    a.shadowing_db = b.shadowing_db = 0.0;
    CHECK(rel(zf_lower_bound(b), 9 * zf_lower_bound(a)) < 1e-13);
}

TEST_CASE("intra mean is affine in K; cont mean does not depend on K")
{
    const double i1 = mean_mrc_closed(cfg(128, 1, 0.2, 3.76, 3.0)).intra;
    const double i2 = mean_mrc_closed(cfg(128, 2, 0.2, 3.76, 3.0)).intra;
    const double i9 = mean_mrc_closed(cfg(128, 9, 0.2, 3.76, 3.0)).intra;
    CHECK(rel(i9, i1 + 8 * (i2 - i1)) < 1e-12);
    CHECK(mean_mrc_closed(cfg(128, 1, 0.2, 3.76, 3.0)).cont == mean_mrc_closed(cfg(128, 30, 0.2, 3.76, 3.0)).cont);
}

TEST_CASE("published ratios at M=128, K=10, l=0.2, gamma=3.76")
{
    const MrcMeans m3 = mean_mrc_closed(cfg(128, 10, 0.2, 3.76, 3.0));
    const MrcMeans m8 = mean_mrc_closed(cfg(128, 10, 0.2, 3.76, 8.0));
    CHECK(m3.inter / m3.cont == doctest::Approx(5.6).epsilon(0.1 / 5.6));
    CHECK(m8.inter / m8.cont == doctest::Approx(0.31).epsilon(0.01 / 0.31));
    // frozen
    CHECK(m3.inter / m3.cont == doctest::Approx(5.570).epsilon(1e-3));
    CHECK(m8.inter / m8.cont == doctest::Approx(0.3091).epsilon(1e-3));

    const MrcVariances v8 = var_mrc(cfg(128, 10, 0.2, 3.76, 8.0));
    const double ratio = v8.inter / v8.cont;
    CHECK(ratio > 0.5e-4);
    CHECK(ratio < 2e-4);
    CHECK(ratio == doctest::Approx(1.0256e-4).epsilon(1e-3));

    const MrcVariances vbig = var_mrc(cfg(128, 10, 0.2, 3.76, 30.0));
    CHECK(vbig.inter / vbig.cont * 127.0 * 127.0 == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("ZF bounds")
{
    const SystemConfig c0 = cfg(128, 10, 0.2, 3.76, 0.0);
    const double lo = zf_lower_bound(c0), up = zf_upper_bound(c0), ct = zf_cont_mean(c0);
    CHECK(lo <= up);
    CHECK(up / lo == doctest::Approx(1.85).epsilon(0.03 / 1.85));
    CHECK(ct / lo == doctest::Approx(0.19).epsilon(0.01 / 0.19));
    CHECK(up / lo == doctest::Approx(1.8465).epsilon(1e-3));
    CHECK(ct / lo == doctest::Approx(0.19123).epsilon(1e-3));
    CHECK(up == doctest::Approx(128.0 / 118.0 * mean_mrc_closed(c0).inter).epsilon(1e-14));

    const SystemConfig c8 = cfg(128, 10, 0.2, 3.76, 8.0);
    CHECK_THROWS_AS(zf_lower_bound(c8), UnsupportedRegime);
    CHECK_FALSE(zf_bounds(c8).lower.has_value());
    const double r = zf_cont_mean(c8) / zf_upper_bound(c8);
    CHECK(r >= 2.8);
    CHECK(r <= 3.4);
    CHECK(r == doctest::Approx(3.00635).epsilon(1e-4));
    // ZF cont is the large-M value of MRC cont
    CHECK(zf_cont_mean(c8) == doctest::Approx(128.0 / 127.0 * mean_mrc_closed(c8).cont).epsilon(1e-14));
}

TEST_CASE("dominance threshold")
{
    const SystemConfig c8 = cfg(128, 10, 0.2, 3.76, 8.0);
    CHECK(dominance_threshold(c8) == doctest::Approx(120).epsilon(10.0 / 120));
    CHECK(dominance_threshold(c8) == doctest::Approx(122.17).epsilon(1e-4));
    const SystemConfig c0 = cfg(128, 10, 0.2, 3.76, 0.0);
    CHECK(dominance_threshold(c0) == doctest::Approx(3636.08).epsilon(1e-5));
    CHECK(dominance_threshold(c0) / dominance_threshold(c8) ==
          doctest::Approx(std::exp(64.0 / (xi * xi))).epsilon(1e-13));

    // exact crossing against a bisection on M of the means themselves
    for (int K : {10, 30})
    {
        SystemConfig c = c8;
        c.pilots = K;
        auto gap = [&](double M)
        {
            SystemConfig s = c;
            s.antennas = K + 1;
            const MrcMeans m = mean_mrc_closed(s);
            const double M0 = s.antennas;
            return (M - 1.0) * m.cont * M0 / (M0 - 1.0) - m.intra * M0;
        };
        double lo = K + 1.0, hi = 1e9;
        for (int i = 0; i < 200; ++i)
        {
            const double mid = 0.5 * (lo + hi);
            (gap(mid) < 0 ? lo : hi) = mid;
        }
        CHECK(dominance_threshold_exact(c) == doctest::Approx(lo / K).epsilon(1e-10));
    }
    CHECK(dominance_threshold_exact(c8) == doctest::Approx(106.98).epsilon(1e-4));

    // the approximation is accurate for small l, steep decay and many pilots
    SystemConfig v = cfg(4096, 2000, 0.1, 5.0, 3.0);
    CHECK(rel(dominance_threshold(v), dominance_threshold_exact(v)) < 0.05);
}

TEST_CASE("sigma crossing")
{
    // inter = cont  <=>  mu = 2 K gamma (gamma-1) l^(2-gamma) / ((gamma-2)^2 (M-2))
    auto direct = [](double M, double K, double l, double g)
    {
        const double mu = 2 * K * g * (g - 1) * std::pow(l, 2 - g) / ((g - 2) * (g - 2) * (M - 2));
        return xi * std::sqrt(std::log(mu));
    };
    const auto s30 = sigma_crossing(cfg(128, 30, 0.2, 3.76, 0.0));
    REQUIRE(s30.has_value());
    CHECK(*s30 >= 7.6);
    CHECK(*s30 <= 8.2);
    CHECK(*s30 == doctest::Approx(direct(128, 30, 0.2, 3.76)).epsilon(0.01 / 7.9));
    CHECK(*s30 == doctest::Approx(7.889).epsilon(0.01 / 7.9));

    const auto s10 = sigma_crossing(cfg(128, 10, 0.2, 3.76, 0.0));
    REQUIRE(s10.has_value());
    CHECK(*s10 == doctest::Approx(direct(128, 10, 0.2, 3.76)).epsilon(0.01 / 6.4));
    CHECK(*s10 < *s30);
    CHECK(*sigma_crossing(cfg(256, 30, 0.2, 3.76, 0.0)) < *s30);
    // no crossing in range when the pilot load is tiny
    CHECK_FALSE(sigma_crossing(cfg(100000, 1, 0.2, 3.76, 0.0)).has_value());
}

TEST_CASE("truncation tails")
{
    SystemConfig c = reference_config();
    const TruncationBound t = truncation_bound(c);
    CHECK(t.outer == doctest::Approx(9.878e-4).epsilon(1e-3));
    CHECK(t.outer_sq == doctest::Approx(3.75e-10).epsilon(2e-3));
    CHECK_FALSE(t.degenerate);
    c.pathloss_exponent = 2.5;
    c.trunc_factor = 3.0;
    CHECK(truncation_bound(c).degenerate);
}

TEST_CASE("PPP sums over a reuse group match Campbell and the second factorial moment")
{
    SystemConfig c = reference_config();
    c.pilots = 1;
    c.antennas = 4;
    c.shadowing_db = 0.0;
    c.trunc_factor = 11.0;
    const double lambda = 1.0 / (pi * c.cell_radius * c.cell_radius);
    const GeometryIntegrals P = geometry_integrals(c);
    const double tail = std::pow(11.0, 2.0 - c.pathloss_exponent);
    const double tail_sq = std::pow(11.0, 2.0 - 2.0 * c.pathloss_exponent);
    const double m1 = lambda * P.outer * (1 - tail);
    const double s2 = lambda * P.outer_sq * (1 - tail_sq);

    const int n = 40000;
    double s = 0, ss = 0, q = 0;
    for (int t = 0; t < n; ++t)
    {
        const LargeScaleState st = summarize_trial(c, static_cast<std::uint64_t>(t));
        const double b = st.totals[0].beta;
        s += b;
        ss += b * b;
        q += st.totals[0].beta_sq;
    }
    const double mean = s / n;
    const double var = ss / n - mean * mean;
    CHECK(std::abs(mean - m1) < 4 * std::sqrt(var / n));
    // E[(sum p)^2] = lambda int p^2 + (lambda int p)^2
    CHECK(ss / n == doctest::Approx(s2 + m1 * m1).epsilon(0.05));
    CHECK(q / n == doctest::Approx(s2).epsilon(0.05));
}

TEST_CASE("asymptotic constants")
{
    SystemConfig c = reference_config();
    c.shadowing_db = 3.0;
    const AsymptoticConstants a = asymptotic_constants(c, 50000);
    CHECK(a.trials == 50000);
    CHECK(a.b1 > 0);
    CHECK(a.b2 > 0);
    CHECK(a.b1_stderr < 0.02 * a.b1);
    CHECK(a.b2_stderr < 0.02 * a.b2);
    CHECK(a.zf_intra_limit(0.25) == doctest::Approx(a.b1 / 3.0).epsilon(1e-15));
    CHECK(a.zf_inter_limit(0.5) == doctest::Approx(a.b2).epsilon(1e-15));
    // finite means approach the fixed-load limit
    const double lim = a.zf_inter_limit(0.25);
    CHECK(rel(a.zf_inter_mean(4096, 1024), lim) < rel(a.zf_inter_mean(64, 16), lim) + 1e-15);

    const double lambda = 1.0 / (pi * c.cell_radius * c.cell_radius);
    const GeometryIntegrals P = geometry_integrals(c);
    const double e = lognormal_moments(3.0).mean;
    CHECK(a.mrc_inter_per_kappa == doctest::Approx(lambda * e * P.outer * lambda * e * (P.inner + P.outer)).epsilon(1e-13));
    // E{alpha} for a single group is lambda E{eta} (P_i + P_o) up to the window tail
    CHECK(a.mean_alpha == doctest::Approx(lambda * e * (P.inner + P.outer)).epsilon(0.03));

    // the MRC limit is the large-M value of the closed form at K = kappa M
    SystemConfig big = c;
    big.antennas = 1 << 20;
    big.pilots = 1 << 18;
    CHECK(mean_mrc_closed(big).inter == doctest::Approx(a.mrc_inter_limit(0.25)).epsilon(1e-4));
    CHECK(mean_mrc_closed(big).intra == doctest::Approx(a.mrc_intra_limit(0.25)).epsilon(1e-4));

    CHECK_THROWS(asymptotic_constants(c, 1));
}

TEST_CASE("analytic report is self-consistent")
{
    const AnalyticMoments m = analytic_moments(cfg(128, 10, 0.2, 3.76, 0.0));
    CHECK(m.zf.lower.has_value());
    CHECK(*m.zf.lower <= m.zf.upper);
    CHECK(m.variance.inter >= 0);
    CHECK(m.variance.cont >= 0);
    const nlohmann::json j = to_json(m);
    CHECK(j.contains("var_mrc"));
    CHECK(j["zf"]["lower"].is_number());
    const nlohmann::json j8 = to_json(analytic_moments(cfg(128, 10, 0.2, 3.76, 8.0)));
    CHECK(j8["zf"]["lower"].is_null());
}
