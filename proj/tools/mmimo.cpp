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
#include "mmimo/config.hpp"
#include "mmimo/propagation.hpp"
#include "mmimo/runner.hpp"
#include "mmimo/spatial.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace mmimo;

namespace
{
    struct Overrides
    {
        std::string config_path;
        std::optional<double> R, d0, A0, A0_db, gamma, sigma_db, rho_p, rho_p_db, rho_r, rho_r_db, trunc_factor;
        std::optional<int> M, K;
        std::optional<std::int64_t> trials, fading_trials;
        std::optional<std::uint64_t> seed;
        bool with_noise = false;
        int workers = 1;
    };

    void add_config_options(CLI::App *app, Overrides &o)
    {
        app->add_option("--config", o.config_path, "JSON config file (short field names)")->check(CLI::ExistingFile);
        app->add_option("--R", o.R, "cell radius [m]");
        app->add_option("--d0", o.d0, "close-in reference distance [m]");
        app->add_option("--A0", o.A0, "path loss inside d0, linear");
        app->add_option("--A0-db", o.A0_db, "path loss inside d0 [dB]")->excludes("--A0");
        app->add_option("--gamma", o.gamma, "path loss exponent");
        app->add_option("--sigma-db", o.sigma_db, "shadowing standard deviation [dB]");
        app->add_option("--M", o.M, "BS antennas");
        app->add_option("--K", o.K, "pilots / intra-cell UEs");
        app->add_option("--rho-p", o.rho_p, "training power, linear");
        app->add_option("--rho-p-db", o.rho_p_db, "training power [dB]")->excludes("--rho-p");
        app->add_option("--rho-r", o.rho_r, "data power, linear");
        app->add_option("--rho-r-db", o.rho_r_db, "data power [dB]")->excludes("--rho-r");
        app->add_flag("--with-noise", o.with_noise, "keep the 1/rho_p and 1/rho_r terms (default: interference limited)");
        app->add_option("--trunc-factor", o.trunc_factor, "outer radius of the PPP window, in cell radii");
        app->add_option("--trials", o.trials, "spatial trials");
        app->add_option("--fading-trials", o.fading_trials, "small-scale fading draws");
        app->add_option("--seed", o.seed, "RNG seed");
        app->add_option("--workers", o.workers, "worker threads (0 = all cores)")->capture_default_str();
    }

    SystemConfig resolve(const Overrides &o, SystemConfig base)
    {
        SystemConfig c = o.config_path.empty() ? base : load_config(o.config_path, base);
        auto set = [](auto &field, const auto &opt)
        {
            if (opt)
                field = *opt;
        };
        set(c.cell_radius, o.R);
        set(c.ref_distance, o.d0);
        set(c.ref_gain, o.A0);
        if (o.A0_db)
            c.ref_gain = db_to_linear(*o.A0_db);
        set(c.pathloss_exponent, o.gamma);
        set(c.shadowing_db, o.sigma_db);
        set(c.antennas, o.M);
        set(c.pilots, o.K);
        set(c.pilot_power, o.rho_p);
        if (o.rho_p_db)
            c.pilot_power = db_to_linear(*o.rho_p_db);
        set(c.data_power, o.rho_r);
        if (o.rho_r_db)
            c.data_power = db_to_linear(*o.rho_r_db);
        if (o.with_noise)
            c.interference_limited = false;
        set(c.trunc_factor, o.trunc_factor);
        set(c.spatial_trials, o.trials);
        set(c.fading_trials, o.fading_trials);
        set(c.seed, o.seed);
        validate(c);
        return c;
    }

    void emit_json(const nlohmann::json &j, const std::string &path)
    {
        if (path.empty())
        {
            std::cout << j.dump(2) << '\n';
            return;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot write " + path);
        out << j.dump(2) << '\n';
    }

    std::vector<int> parse_int_list(const std::string &text)
    {
        std::vector<int> values;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ','))
        {
            std::size_t used = 0;
            const int v = std::stoi(item, &used);
            if (used != item.size())
                throw std::invalid_argument("bad integer in list: " + item);
            values.push_back(v);
        }
        return values;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Uplink interference simulator for multi-cell massive MIMO (MRC / ZF, PPP layouts)"};
    app.require_subcommand(1);

    Overrides o;
    std::string out_path;
    int exit_code = 0;

    auto *cdf = app.add_subcommand("simulate-cdf", "Monte Carlo CDFs of the six interference components");
    add_config_options(cdf, o);
    cdf->add_option("--out", out_path, "output directory")->required();

    auto *moments = app.add_subcommand("validate-moments", "spatial Monte Carlo vs closed-form means and variances");
    add_config_options(moments, o);
    moments->add_option("--out", out_path, "JSON report (default: stdout)");

    auto *fading = app.add_subcommand("validate-fading", "small-scale fading oracle vs the fading-averaged kernel");
    add_config_options(fading, o);
    fading->add_option("--out", out_path, "JSON report (default: stdout)");

    double kappa = 0.25;
    std::string m_list = "64,128,256";
    auto *kscan = app.add_subcommand("kappa-scan", "fixed load factor scan over M");
    add_config_options(kscan, o);
    kscan->add_option("--kappa", kappa, "load factor K/M")->capture_default_str();
    kscan->add_option("--m-list", m_list, "comma separated antenna counts")->capture_default_str();
    kscan->add_option("--out", out_path, "output directory (kappa.csv, kappa.json)");

    std::int64_t asymptotic_trials = 0;
    auto *report = app.add_subcommand("analytic-report", "closed-form moments, bounds and thresholds as JSON");
    add_config_options(report, o);
    report->add_option("--asymptotic-trials", asymptotic_trials,
                       "spatial draws for the fixed-load constants (0 = skip)")
        ->capture_default_str();
    report->add_option("--out", out_path, "JSON file (default: stdout)");

    int which = 1;
    std::int64_t sweep_trials = 1000;
    auto *figures = app.add_subcommand("figures", "CSV bundle for one figure");
    add_config_options(figures, o);
    figures->add_option("--which", which, "figure 1 (CDFs, sigma 0), 2 (CDFs, sigma 8), 3 (means vs sigma), "
                                          "4 (normalized variances vs sigma)")
        ->required()
        ->check(CLI::Range(1, 4));
    figures->add_option("--sweep-trials", sweep_trials, "spatial trials per sigma for figures 3 and 4")
        ->capture_default_str();
    figures->add_option("--out", out_path, "output directory")->required();

    std::int64_t dump_trials = 1;
    auto *layout = app.add_subcommand("dump-layout", "per-UE positions and large-scale gains as CSV");
    add_config_options(layout, o);
    layout->add_option("--count", dump_trials, "number of trials to dump")->capture_default_str();
    layout->add_option("--out", out_path, "CSV file")->required();

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*cdf)
        {
            const SystemConfig c = resolve(o, reference_config());
            const CampaignResult r = run_cdf_campaign(c, o.workers);
            write_campaign(r, out_path);
            const double gap = 10.0 * std::log10(r.mrc[0].median() / r.mrc[2].median());
            std::printf("%s\ntrials=%zu median gap MRC intra - cont = %.2f dB, ordering violations = %lld\n",
                        output_header(c).c_str(), r.records.size(), gap,
                        static_cast<long long>(r.ordering_violations));
            exit_code = r.ordering_violations == 0 ? 0 : 1;
        }
        else if (*moments)
        {
            const SystemConfig c = resolve(o, reference_config());
            const MomentReport r = run_moment_validation(c, o.workers);
            for (const auto &chk : r.checks)
                std::fprintf(stderr, "%-28s emp=%.6e  analytic=%.6e  tol=%.3e  %s%s\n", chk.name.c_str(),
                             chk.empirical, chk.analytic, chk.tolerance, chk.pass ? "ok" : "FAIL",
                             chk.gating ? "" : " (not gating)");
            emit_json(to_json(r), out_path);
            exit_code = r.pass() ? 0 : 1;
        }
        else if (*fading)
        {
            const SystemConfig c = resolve(o, fading_default());
            const FadingReport r = run_fading_validation(c);
            for (const auto &chk : r.checks)
                std::fprintf(stderr, "%-26s measured=%.6e expected=%.6e err=%.2e tol=%.0e %s\n", chk.name.c_str(),
                             chk.measured, chk.expected, chk.error, chk.tolerance, chk.pass ? "ok" : "FAIL");
            emit_json(to_json(r), out_path);
            exit_code = r.pass() ? 0 : 1;
        }
        else if (*kscan)
        {
            const SystemConfig c = resolve(o, reference_config());
            const KappaScan s = run_kappa_scan(c, kappa, parse_int_list(m_list), o.workers);
            if (out_path.empty())
            {
                write_kappa_csv(std::cout, s);
                std::cout << to_json(s).dump(2) << '\n';
            }
            else
            {
                std::filesystem::create_directories(out_path);
                std::ofstream csv(std::filesystem::path(out_path) / "kappa.csv", std::ios::binary);
                write_kappa_csv(csv, s);
                emit_json(to_json(s), (std::filesystem::path(out_path) / "kappa.json").string());
            }
        }
        else if (*report)
        {
            const SystemConfig c = resolve(o, reference_config());
            nlohmann::json j = analytic_report(c);
            if (asymptotic_trials > 0)
                j["asymptotic"] = to_json(asymptotic_constants(c, asymptotic_trials));
            emit_json(j, out_path);
        }
        else if (*figures)
        {
            const SystemConfig c = resolve(o, reference_config());
            write_figure_bundle(which, c, out_path, o.workers, sweep_trials);
        }
        else if (*layout)
        {
            const SystemConfig c = resolve(o, reference_config());
            std::ofstream out(out_path, std::ios::binary);
            if (!out)
                throw std::runtime_error("cannot write " + out_path);
            out << output_header(c) << '\n';
            write_state_csv_header(out);
            for (std::int64_t t = 0; t < dump_trials; ++t)
            {
                const PointLayout l = sample_layout(c, static_cast<std::uint64_t>(t));
                write_state_csv(out, static_cast<std::uint64_t>(t), l,
                                build_large_scale(l, c, static_cast<std::uint64_t>(t)));
            }
        }
    }
    catch (const ConfigError &e)
    {
        std::fprintf(stderr, "config error (%s): %s\n", e.field().c_str(), e.what());
        return 2;
    }
    catch (const std::exception &e)
    {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return exit_code;
}
