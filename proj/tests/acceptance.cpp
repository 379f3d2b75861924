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


// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "mmimo/analytics.hpp"
#include "mmimo/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>

using namespace mmimo;

namespace
{
    int failures = 0;

    void report(int id, bool pass, const std::string &detail)
    {
        std::printf("criterion %d: %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
        std::fflush(stdout);
        failures += !pass;
    }

    double seconds_since(std::chrono::steady_clock::time_point t0)
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }

    std::string fmt(const char *f, double a = 0, double b = 0, double c = 0, double d = 0)
    {
        char buf[512];
        std::snprintf(buf, sizeof buf, f, a, b, c, d);
        return buf;
    }

    SystemConfig geometry(int M, int K, double l, double gamma, double sigma)
    {
        SystemConfig c = reference_config();
        c.antennas = M;
        c.pilots = K;
        c.ref_distance = l * c.cell_radius;
        c.pathloss_exponent = gamma;
        c.shadowing_db = sigma;
        return c;
    }

    double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

    void closed_form_consistency()
    {
        const auto t0 = std::chrono::steady_clock::now();
        double worst = 0.0;
        for (double g : {2.5, 3.0, 3.76, 4.0, 5.0})
            for (double l : {0.1, 0.2, 0.5})
                for (double s : {0.0, 3.0, 8.0})
                {
                    const SystemConfig c = geometry(128, 10, l, g, s);
                    const MrcMeans a = mean_mrc_general(c), b = mean_mrc_closed(c);
                    worst = std::max({worst, rel(a.intra, b.intra), rel(a.inter, b.inter), rel(a.cont, b.cont)});
                }
        const double t = seconds_since(t0);
        report(1, worst <= 1e-9 && t < 1.0, fmt("max relative gap %.3g over 45 points, %.3f s", worst, t));
    }

    void published_ratios()
    {
        const auto t0 = std::chrono::steady_clock::now();
        const MrcMeans m3 = mean_mrc_closed(geometry(128, 10, 0.2, 3.76, 3.0));
        const MrcMeans m8 = mean_mrc_closed(geometry(128, 10, 0.2, 3.76, 8.0));
        const MrcVariances v8 = var_mrc(geometry(128, 10, 0.2, 3.76, 8.0));
        const MrcVariances vinf = var_mrc(geometry(128, 10, 0.2, 3.76, 30.0));
        const double r3 = m3.inter / m3.cont, r8 = m8.inter / m8.cont;
        const double vr = v8.inter / v8.cont;
        const double vlim = vinf.inter / vinf.cont * 127.0 * 127.0;
        const double dom = dominance_threshold(geometry(128, 10, 0.2, 3.76, 8.0));
        const SystemConfig z0 = geometry(128, 10, 0.2, 3.76, 0.0);
        const double lo = zf_lower_bound(z0);
        const double up_lo = zf_upper_bound(z0) / lo, cont_lo = zf_cont_mean(z0) / lo;
        const SystemConfig z8 = geometry(128, 10, 0.2, 3.76, 8.0);
        const double cont_up = zf_cont_mean(z8) / zf_upper_bound(z8);
        const double t = seconds_since(t0);

        const bool pass = std::abs(r3 - 5.6) <= 0.1 && std::abs(r8 - 0.31) <= 0.01 && vr >= 0.5e-4 && vr <= 2e-4 &&
                          std::abs(vlim - 1.0) < 1e-2 && std::abs(dom - 120.0) <= 10.0 &&
                          std::abs(up_lo - 1.85) <= 0.03 && std::abs(cont_lo - 0.19) <= 0.01 && cont_up >= 2.8 &&
                          cont_up <= 3.4 && t < 1.0;
        report(2, pass,
               fmt("inter/cont %.4f (3 dB) %.4f (8 dB); var ratio %.4g; ", r3, r8, vr) +
                   fmt("var ratio x (M-1)^2 at 30 dB %.5f; M/K threshold %.2f; ", vlim, dom) +
                   fmt("ZF upper/lower %.4f, cont/lower %.4f, cont/upper (8 dB) %.4f", up_lo, cont_lo, cont_up));
    }

    void sigma_star()
    {
        const auto t0 = std::chrono::steady_clock::now();
        const auto s = sigma_crossing(geometry(128, 30, 0.2, 3.76, 0.0));
        const double t = seconds_since(t0);
        report(3, s && *s >= 7.6 && *s <= 8.2 && t < 1.0, s ? fmt("sigma* = %.3f dB", *s) : "no crossing in [0, 12] dB");
    }

    void fading_oracle()
    {
        const SystemConfig c = fading_default();
        const FadingReport r = run_fading_validation(c);
        std::size_t largest = 0;
        for (std::size_t g : r.group_sizes)
            largest = std::max(largest, g);
        std::string worst;
        for (const FadingCheck &k : r.checks)
            if (!k.pass)
                worst += " " + k.name;
        const bool pass = r.pass() && largest <= 10 && c.antennas == 32 && c.pilots == 4 &&
                          c.fading_trials >= 100000 && r.wall_seconds < 120.0;
        std::string detail = fmt("M=%.0f K=%.0f, largest group %.0f, draws %.0f, ", c.antennas, c.pilots,
                                 static_cast<double>(largest), static_cast<double>(c.fading_trials));
        detail += fmt("%.0f checks, %.1f s", static_cast<double>(r.checks.size()), r.wall_seconds);
        if (!worst.empty())
            detail += "; failing:" + worst;
        report(4, pass, detail);
    }

    void spatial_moments()
    {
        bool pass = true;
        std::string detail;
        for (double sigma : {0.0, 3.0})
        {
            SystemConfig c = geometry(128, 10, 0.2, 3.76, sigma);
            c.spatial_trials = 100000;
            const MomentReport r = run_moment_validation(c, 1);
            std::string bad;
            for (const MomentCheck &k : r.checks)
                if (k.gating && !k.pass)
                    bad += " " + k.name;
            const bool ok = r.pass() && r.wall_seconds < 120.0;
            pass = pass && ok;
            detail += fmt("sigma %.0f dB: %.0f checks in %.1f s", sigma, static_cast<double>(r.checks.size()),
                          r.wall_seconds);
            detail += ok ? "; " : " (failing:" + bad + "); ";
        }
        report(5, pass, detail);
    }

    struct Table2Runs
    {
        CampaignResult s0, s8;
    };

    void ordering(const Table2Runs &r)
    {
        const bool pass = r.s0.records.size() >= 10000 && r.s8.records.size() >= 10000 &&
                          r.s0.ordering_violations == 0 && r.s8.ordering_violations == 0;
        report(6, pass,
               fmt("violations %.0f / %.0f (0 dB), %.0f / %.0f (8 dB)", static_cast<double>(r.s0.ordering_violations),
                   static_cast<double>(r.s0.records.size()), static_cast<double>(r.s8.ordering_violations),
                   static_cast<double>(r.s8.records.size())) +
                   fmt("; all groups multi-UE in %.0f and %.0f trials", static_cast<double>(r.s0.multi_group_trials),
                       static_cast<double>(r.s8.multi_group_trials)));
    }

    void cdf_shape(const Table2Runs &r)
    {
        auto gap = [](const CampaignResult &c)
        {
            return linear_to_db(c.distribution(Receiver::mrc, Component::intra).median()) -
                   linear_to_db(c.distribution(Receiver::mrc, Component::cont).median());
        };
        const double g0 = gap(r.s0), g8 = gap(r.s8);
        const double p_cont = r.s8.distribution(Receiver::mrc, Component::cont).quantile(0.01);
        const double p_inter = r.s8.distribution(Receiver::mrc, Component::inter).quantile(0.01);
        const bool pass = g0 >= 20.0 && g0 <= 24.0 && g8 < g0 && p_cont < p_inter && r.s0.wall_seconds < 120.0 &&
                          r.s8.wall_seconds < 120.0;
        report(7, pass,
               fmt("median gap %.2f dB (0 dB), %.2f dB (8 dB); ", g0, g8) +
                   fmt("1st percentile cont %.2f dB vs inter %.2f dB; ", linear_to_db(p_cont), linear_to_db(p_inter)) +
                   fmt("%.1f s + %.1f s", r.s0.wall_seconds, r.s8.wall_seconds));
    }

    void kappa_scaling()
    {
        SystemConfig c = reference_config();
        c.spatial_trials = 30000;
        const KappaScan s = run_kappa_scan(c, 0.25, {64, 128, 256}, 1);
        std::string detail;
        for (const KappaRow &row : s.rows)
            detail += fmt("M=%.0f zf %.4g mrc %.4g; ", row.antennas, row.zf_inter_normalized,
                          row.mrc_inter_normalized);
        detail += fmt("max/min zf %.4f mrc %.4f", s.zf_inter_spread, s.mrc_inter_spread);
        report(8, s.zf_constant() && s.mrc_constant(), detail);
    }

    std::string slurp(const std::filesystem::path &p)
    {
        std::ifstream in(p, std::ios::binary);
        return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    }

    void determinism()
    {
        SystemConfig c = reference_config();
        c.pilots = 10;
        c.shadowing_db = 8.0;
        c.spatial_trials = 2000;
        const auto root = std::filesystem::temp_directory_path() / "mmimo_acceptance_determinism";
        std::filesystem::remove_all(root);
        write_campaign(run_cdf_campaign(c, 1), root / "w1");
        write_campaign(run_cdf_campaign(c, 3), root / "w3");
        int compared = 0, differing = 0;
        for (const auto &e : std::filesystem::directory_iterator(root / "w1"))
        {
            if (e.path().extension() != ".csv")
                continue;
            ++compared;
            const std::string a = slurp(e.path());
            const std::string b = slurp(root / "w3" / e.path().filename());
            differing += a.empty() || a != b;
        }
        std::filesystem::remove_all(root);
        report(9, compared == 7 && differing == 0,
               fmt("%.0f CSVs compared for 1 vs 3 workers, %.0f differ", compared, differing));
    }
}

int main()
{
    try
    {
        closed_form_consistency();
        published_ratios();
        sigma_star();
        fading_oracle();
        spatial_moments();

        Table2Runs runs;
        SystemConfig t2 = reference_config();
        t2.spatial_trials = 10000;
        t2.shadowing_db = 0.0;
        runs.s0 = run_cdf_campaign(t2, 1);
        t2.shadowing_db = 8.0;
        runs.s8 = run_cdf_campaign(t2, 1);
        ordering(runs);
        cdf_shape(runs);

        kappa_scaling();
        determinism();
    }
    catch (const std::exception &e)
    {
        std::printf("acceptance aborted: %s\n", e.what());
        return 2;
    }
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
