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


// Monte Carlo campaigns over spatial realizations, comparison reports
// against the closed forms, and the CSV / JSON writers behind the CLI.
//
// Trial t always draws from the substreams of (seed, t), and results are
// stored in per-trial slots before any reduction, so every output is
// independent of the worker count.

#ifndef MMIMO_RUNNER_HPP
#define MMIMO_RUNNER_HPP

#include "mmimo/analytics.hpp"
#include "mmimo/config.hpp"
#include "mmimo/fading.hpp"
#include "mmimo/interference.hpp"
#include "mmimo/statistics.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace mmimo
{
    // Runs body(i) for i in [0, count) on `workers` threads (0 = hardware concurrency).
    void parallel_for(std::int64_t count, int workers, const std::function<void(std::int64_t)> &body);

    // "# config_hash=<hex> seed=<n>"
    std::string output_header(const SystemConfig &config);

    struct TrialRecord
    {
        InterferenceSample mrc;
        InterferenceSample zf;
        OrderingCheck ordering;
    };

    // Fading-averaged samples of the probe pilot for trials [0, spatial_trials).
    std::vector<TrialRecord> run_trials(const SystemConfig &config, int pilot, int workers);

    struct CampaignResult
    {
        SystemConfig config;
        int pilot = 0;
        std::vector<TrialRecord> records;
        std::array<EmpiricalDistribution, 3> mrc; // indexed by Component
        std::array<EmpiricalDistribution, 3> zf;
        EmpiricalDistribution mrc_sir, zf_sir;
        std::int64_t ordering_violations = 0;
        std::int64_t multi_group_trials = 0; // trials in which every reuse group has >= 2 UEs
        AnalyticMoments analytic;
        double wall_seconds = 0.0;

        const EmpiricalDistribution &distribution(Receiver r, Component c) const;
    };

    CampaignResult run_cdf_campaign(const SystemConfig &config, int workers);

    struct MomentCheck
    {
        std::string name;
        double empirical = 0.0;
        double stderr_ = 0.0;
        double analytic = 0.0;
        double tolerance = 0.0;
        bool gating = true; // false: reported only
        bool pass = false;
    };

    struct MomentReport
    {
        SystemConfig config;
        std::int64_t trials = 0;
        TruncationBound truncation;
        std::vector<MomentCheck> checks;
        double inter_over_cont = 0.0;          // empirical MRC mean ratio
        double inter_over_cont_analytic = 0.0;
        double wall_seconds = 0.0;

        bool pass() const;
    };

    // Means: |emp - analytic| <= max(3 stderr, max(0.2 %, tail fraction) |analytic|).
    // Variances gate only for sigma_dB <= 4; above that they are reported.
    // Standard errors are batch means over 100 batches.
    MomentReport run_moment_validation(const SystemConfig &config, int workers);

    struct KappaRow
    {
        int antennas = 0;
        int pilots = 0;
        BatchEstimate zf_intra, zf_inter, mrc_intra, mrc_inter;
        double zf_inter_normalized = 0.0;  // E * (1 - kappa) / kappa
        double zf_intra_normalized = 0.0;
        double mrc_inter_normalized = 0.0; // E / kappa
        double mrc_intra_normalized = 0.0;
    };

    struct KappaScan
    {
        SystemConfig base;
        double kappa = 0.0;
        std::vector<KappaRow> rows;
        // max / min of each normalized column across the rows
        double zf_inter_spread = 0.0, zf_intra_spread = 0.0, mrc_inter_spread = 0.0, mrc_intra_spread = 0.0;
        static constexpr double constancy_limit = 1.10;

        bool zf_constant() const { return zf_inter_spread <= constancy_limit; }
        bool mrc_constant() const { return mrc_inter_spread <= constancy_limit; }
    };

    // K = kappa M must be integral for every M; base.spatial_trials trials per M.
    KappaScan run_kappa_scan(const SystemConfig &base, double kappa, const std::vector<int> &antenna_list,
                             int workers);

    // Small fixed instance for the fading oracle: the layout of trial 0 with
    // every reuse group cut to its first `max_outer` UEs.
    LargeScaleState fading_instance(const SystemConfig &config, std::size_t max_outer = 10);

    // M = 32, K = 4, sigma = 3 dB, window 3R (about 8 reusing UEs per group).
    SystemConfig fading_default();

    struct FadingCheck
    {
        std::string name;
        double measured = 0.0;
        double stderr_ = 0.0;
        double expected = 0.0;
        double error = 0.0;     // relative, or absolute gap for the per-draw SINR identity
        double tolerance = 0.0;
        bool pass = false;
    };

    struct FadingReport
    {
        SystemConfig config;
        std::vector<std::size_t> group_sizes;
        FadingMeasurement mrc, zf;
        std::vector<FadingCheck> checks;
        double wall_seconds = 0.0;

        bool pass() const;
    };

    // Oracle vs the fading-averaged kernel: 1 % (MRC) and 2 % (ZF) relative per component,
    // per-draw SINR identity to 1e-8, inverse Gram diagonal within 2 %.
    FadingReport run_fading_validation(const SystemConfig &config);

    // Mean sweep over shadowing levels for the moment-vs-sigma figures.
    struct SweepRow
    {
        double sigma_db = 0.0;
        MrcMeans analytic;
        MrcVariances variance;
        std::int64_t trials = 0; // 0: analytic only
        std::array<BatchEstimate, 3> mrc_mean;
        double inter_normalized_var = 0.0; // empirical var / mean^2
        double cont_normalized_var = 0.0;
    };

    std::vector<SweepRow> run_sigma_sweep(const SystemConfig &config, const std::vector<double> &sigmas,
                                          std::int64_t trials, int workers);

    // ---- writers ------------------------------------------------------------

    // cdf_<receiver>_<component>.csv for all six distributions plus samples.csv.
    void write_campaign(const CampaignResult &result, const std::filesystem::path &dir);
    void write_cdf_csv(std::ostream &out, const SystemConfig &config, const EmpiricalDistribution &d);
    void write_samples_csv(std::ostream &out, const CampaignResult &result);
    void write_kappa_csv(std::ostream &out, const KappaScan &scan);
    void write_sweep_csv(std::ostream &out, const SystemConfig &config, const std::vector<SweepRow> &rows);

    nlohmann::json to_json(const CampaignResult &result);
    nlohmann::json to_json(const MomentReport &report);
    nlohmann::json to_json(const KappaScan &scan);
    nlohmann::json to_json(const FadingReport &report);
    nlohmann::json analytic_report(const SystemConfig &config);

    // CSV bundle of figure `which` (1..4) in `dir`; sweep_trials only matters for 3 and 4.
    void write_figure_bundle(int which, const SystemConfig &config, const std::filesystem::path &dir, int workers,
                             std::int64_t sweep_trials);
}

#endif
