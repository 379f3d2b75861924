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


#include "mmimo/runner.hpp"

#include "mmimo/propagation.hpp"
#include "mmimo/spatial.hpp"
#include "text_format.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace mmimo
{
    namespace
    {
        constexpr std::array<Component, 3> all_components{Component::intra, Component::inter, Component::cont};

        class Stopwatch
        {
        public:
            double seconds() const
            {
                return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
            }

        private:
            std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
        };

        int batch_count(std::size_t n)
        {
            return static_cast<int>(std::min<std::size_t>(100, n / 2));
        }

        nlohmann::json header_json(const SystemConfig &c)
        {
            return {{"config_hash", config_hash(c)}, {"seed", c.seed}};
        }

        nlohmann::json nullable(double v)
        {
            return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
        }

        nlohmann::json estimate_json(const BatchEstimate &e)
        {
            return {{"value", e.value}, {"stderr", e.stderr_}, {"batches", e.batches}};
        }

        void open_for_write(std::ofstream &out, const std::filesystem::path &path)
        {
            out.open(path, std::ios::binary);
            if (!out)
                throw std::runtime_error("cannot write " + path.string());
        }
    }

    void parallel_for(std::int64_t count, int workers, const std::function<void(std::int64_t)> &body)
    {
        if (workers <= 0)
            workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
        workers = static_cast<int>(std::min<std::int64_t>(workers, std::max<std::int64_t>(count, 1)));
        if (workers == 1)
        {
            for (std::int64_t i = 0; i < count; ++i)
                body(i);
            return;
        }

        std::atomic<std::int64_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        auto work = [&]
        {
            for (;;)
            {
                const std::int64_t i = next.fetch_add(1);
                if (i >= count)
                    return;
                try
                {
                    body(i);
                }
                catch (...)
                {
                    std::lock_guard lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                    next = count;
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(work);
        for (auto &t : pool)
            t.join();
        if (failure)
            std::rethrow_exception(failure);
    }

    std::string output_header(const SystemConfig &config)
    {
        return "# config_hash=" + config_hash(config) + " seed=" + std::to_string(config.seed);
    }

    std::vector<TrialRecord> run_trials(const SystemConfig &config, int pilot, int workers)
    {
        validate(config);
        if (pilot < 0 || pilot >= config.pilots)
            throw std::out_of_range("run_trials: pilot index out of range");
        std::vector<TrialRecord> records(static_cast<std::size_t>(config.spatial_trials));
        parallel_for(config.spatial_trials, workers,
                     [&](std::int64_t t)
                     {
                         const LargeScaleState state = summarize_trial(config, static_cast<std::uint64_t>(t));
                         TrialRecord &r = records[static_cast<std::size_t>(t)];
                         r.mrc = mrc_components(state, pilot, config);
                         r.zf = zf_components(state, pilot, config);
                         r.ordering = ordering_check(state, pilot, config);
                     });
        return records;
    }

    const EmpiricalDistribution &CampaignResult::distribution(Receiver r, Component c) const
    {
        const auto i = static_cast<std::size_t>(c);
        return r == Receiver::mrc ? mrc[i] : zf[i];
    }

    CampaignResult run_cdf_campaign(const SystemConfig &config, int workers)
    {
        const Stopwatch clock;
        CampaignResult res;
        res.config = config;
        res.pilot = 0;
        res.analytic = analytic_moments(config);
        res.records = run_trials(config, res.pilot, workers);
        for (const auto &r : res.records)
        {
            for (Component c : all_components)
            {
                res.mrc[static_cast<std::size_t>(c)].add(r.mrc.component(c));
                res.zf[static_cast<std::size_t>(c)].add(r.zf.component(c));
            }
            res.mrc_sir.add(r.mrc.sir);
            res.zf_sir.add(r.zf.sir);
            if (!r.ordering.holds())
                ++res.ordering_violations;
            if (r.ordering.all_groups_multi)
                ++res.multi_group_trials;
        }
        res.wall_seconds = clock.seconds();
        return res;
    }

    bool MomentReport::pass() const
    {
        return std::all_of(checks.begin(), checks.end(), [](const MomentCheck &c) { return !c.gating || c.pass; });
    }

    MomentReport run_moment_validation(const SystemConfig &config, int workers)
    {
        const Stopwatch clock;
        MomentReport rep;
        rep.config = config;
        rep.trials = config.spatial_trials;
        rep.truncation = truncation_bound(config);
        const auto records = run_trials(config, 0, workers);
        const int batches = batch_count(records.size());

        const MrcMeans means = mean_mrc_closed(config);
        const MrcVariances vars = var_mrc(config);
        const double mean_rel = std::max(0.002, rep.truncation.outer);

        auto dist = [&](Receiver r, Component c)
        {
            EmpiricalDistribution d;
            for (const auto &rec : records)
                d.add(r == Receiver::mrc ? rec.mrc.component(c) : rec.zf.component(c));
            return d;
        };
        auto mean_check = [&](const std::string &name, const EmpiricalDistribution &d, double analytic)
        {
            const BatchEstimate e = d.mean_estimate(batches);
            MomentCheck c{name, e.value, e.stderr_, analytic, std::max(3.0 * e.stderr_, mean_rel * std::abs(analytic))};
            c.pass = std::abs(e.value - analytic) <= c.tolerance;
            rep.checks.push_back(c);
        };
        auto var_check = [&](const std::string &name, const EmpiricalDistribution &d, double analytic)
        {
            const BatchEstimate e = d.variance_estimate(batches);
            MomentCheck c{name, e.value, e.stderr_, analytic, 3.0 * e.stderr_};
            c.gating = config.shadowing_db <= 4.0;
            c.pass = std::abs(e.value - analytic) <= c.tolerance;
            rep.checks.push_back(c);
        };

        const auto intra = dist(Receiver::mrc, Component::intra);
        const auto inter = dist(Receiver::mrc, Component::inter);
        const auto cont = dist(Receiver::mrc, Component::cont);
        mean_check("mrc_mean_intra", intra, means.intra);
        mean_check("mrc_mean_inter", inter, means.inter);
        mean_check("mrc_mean_cont", cont, means.cont);
        var_check("mrc_var_inter", inter, vars.inter);
        var_check("mrc_var_cont", cont, vars.cont);
        mean_check("zf_mean_cont", dist(Receiver::zf, Component::cont), zf_cont_mean(config));

        const auto zf_intra = dist(Receiver::zf, Component::intra).mean_estimate(batches);
        if (config.shadowing_db == 0.0)
        {
            const double lower = zf_lower_bound(config);
            MomentCheck c{"zf_mean_intra_above_lower", zf_intra.value, zf_intra.stderr_, lower, 0.0};
            c.pass = zf_intra.value >= lower;
            rep.checks.push_back(c);
        }
        const double upper = zf_upper_bound(config);
        MomentCheck c{"zf_mean_intra_below_upper", zf_intra.value, zf_intra.stderr_, upper, 0.0};
        c.pass = zf_intra.value <= upper;
        rep.checks.push_back(c);

        rep.inter_over_cont = inter.mean() / cont.mean();
        rep.inter_over_cont_analytic = means.inter / means.cont;
        rep.wall_seconds = clock.seconds();
        return rep;
    }

    KappaScan run_kappa_scan(const SystemConfig &base, double kappa, const std::vector<int> &antenna_list,
                             int workers)
    {
        if (!(kappa > 0.0 && kappa < 1.0))
            throw std::invalid_argument("kappa-scan: kappa must lie in (0, 1)");
        if (antenna_list.empty())
            throw std::invalid_argument("kappa-scan: empty antenna list");

        KappaScan scan;
        scan.base = base;
        scan.kappa = kappa;
        for (int M : antenna_list)
        {
            const double k_real = kappa * M;
            const auto K = static_cast<int>(std::lround(k_real));
            if (std::abs(k_real - K) > 1e-9 || K < 1)
                throw std::invalid_argument("kappa-scan: kappa * M must be a positive integer for M = " +
                                            std::to_string(M));
            SystemConfig c = base;
            c.antennas = M;
            c.pilots = K;
            const auto records = run_trials(c, 0, workers);
            const int batches = batch_count(records.size());
            EmpiricalDistribution zi, ze, mi, me;
            for (const auto &r : records)
            {
                zi.add(r.zf.intra);
                ze.add(r.zf.inter);
                mi.add(r.mrc.intra);
                me.add(r.mrc.inter);
            }
            KappaRow row;
            row.antennas = M;
            row.pilots = K;
            row.zf_intra = zi.mean_estimate(batches);
            row.zf_inter = ze.mean_estimate(batches);
            row.mrc_intra = mi.mean_estimate(batches);
            row.mrc_inter = me.mean_estimate(batches);
            const double zf_scale = (1.0 - kappa) / kappa;
            row.zf_intra_normalized = row.zf_intra.value * zf_scale;
            row.zf_inter_normalized = row.zf_inter.value * zf_scale;
            row.mrc_intra_normalized = row.mrc_intra.value / kappa;
            row.mrc_inter_normalized = row.mrc_inter.value / kappa;
            scan.rows.push_back(row);
        }

        auto spread = [&](double KappaRow::*field)
        {
            double lo = scan.rows.front().*field, hi = lo;
            for (const auto &r : scan.rows)
            {
                lo = std::min(lo, r.*field);
                hi = std::max(hi, r.*field);
            }
            return hi / lo;
        };
        scan.zf_inter_spread = spread(&KappaRow::zf_inter_normalized);
        scan.zf_intra_spread = spread(&KappaRow::zf_intra_normalized);
        scan.mrc_inter_spread = spread(&KappaRow::mrc_inter_normalized);
        scan.mrc_intra_spread = spread(&KappaRow::mrc_intra_normalized);
        return scan;
    }

    LargeScaleState fading_instance(const SystemConfig &config, std::size_t max_outer)
    {
        PointLayout layout = sample_layout(config, 0);
        for (auto &group : layout.outer)
            if (group.size() > max_outer)
                group.resize(max_outer);
        return build_large_scale(layout, config, 0);
    }

    SystemConfig fading_default()
    {
        SystemConfig c = reference_config();
        c.antennas = 32;
        c.pilots = 4;
        c.shadowing_db = 3.0;
        c.trunc_factor = 3.0;
        c.fading_trials = 100000;
        return c;
    }

    bool FadingReport::pass() const
    {
        return std::all_of(checks.begin(), checks.end(), [](const FadingCheck &c) { return c.pass; });
    }

    FadingReport run_fading_validation(const SystemConfig &config)
    {
        const Stopwatch clock;
        validate(config);
        FadingReport rep;
        rep.config = config;
        const LargeScaleState state = fading_instance(config);
        for (const auto &t : state.totals)
            rep.group_sizes.push_back(t.count);

        const int k = 0;
        rep.mrc = measure_components(state, k, Receiver::mrc, config, config.fading_trials, config.seed);
        rep.zf = measure_components(state, k, Receiver::zf, config, config.fading_trials, config.seed);
        const InterferenceSample mrc = mrc_components(state, k, config);
        const InterferenceSample zf = zf_components(state, k, config);

        auto relative = [&](const std::string &name, const ComponentStat &m, double expected, double tol)
        {
            FadingCheck c{name, m.mean, m.stderr_, expected, 0.0, tol};
            c.error = expected != 0.0 ? std::abs(m.mean - expected) / std::abs(expected) : std::abs(m.mean);
            c.pass = c.error <= tol;
            rep.checks.push_back(c);
        };
        const auto &reuse = state.outer[static_cast<std::size_t>(k)];
        double reuse_beta = 0.0;
        for (const auto &g : reuse)
            reuse_beta += g.beta;

        relative("mrc_signal", rep.mrc.signal, mrc.signal, 0.01);
        relative("mrc_intra", rep.mrc.intra, mrc.intra, 0.01);
        relative("mrc_inter", rep.mrc.inter, mrc.inter, 0.01);
        relative("mrc_cont", rep.mrc.cont, mrc.cont, 0.01);
        relative("mrc_reuse_group", rep.mrc.reuse_group,
                 mrc.cont + state.alpha[static_cast<std::size_t>(k)] / config.antennas * reuse_beta, 0.01);
        relative("zf_signal", rep.zf.signal, zf.signal, 0.02);
        relative("zf_intra", rep.zf.intra, zf.intra, 0.02);
        relative("zf_inter", rep.zf.inter, zf.inter, 0.02);
        relative("zf_cont", rep.zf.cont, zf.cont, 0.02);
        relative("zf_inverse_gram", rep.zf.wishart_ratio, 1.0, 0.02);

        FadingCheck gap{"zf_sinr_simplified_form", rep.zf.max_sinr_form_gap, 0.0, 0.0, rep.zf.max_sinr_form_gap, 1e-8};
        gap.pass = rep.zf.max_sinr_form_gap <= 1e-8 && rep.zf.used() > 0;
        rep.checks.push_back(gap);
        rep.wall_seconds = clock.seconds();
        return rep;
    }

    std::vector<SweepRow> run_sigma_sweep(const SystemConfig &config, const std::vector<double> &sigmas,
                                          std::int64_t trials, int workers)
    {
        std::vector<SweepRow> rows;
        for (double s : sigmas)
        {
            SystemConfig c = config;
            c.shadowing_db = s;
            SweepRow row;
            row.sigma_db = s;
            row.analytic = mean_mrc_closed(c);
            row.variance = var_mrc(c);
            if (trials > 0)
            {
                if (trials < 4)
                    throw std::invalid_argument("sigma sweep: need at least 4 trials per point");
                c.spatial_trials = trials;
                const auto records = run_trials(c, 0, workers);
                std::array<EmpiricalDistribution, 3> d;
                for (const auto &r : records)
                    for (Component comp : all_components)
                        d[static_cast<std::size_t>(comp)].add(r.mrc.component(comp));
                const int batches = batch_count(records.size());
                for (std::size_t i = 0; i < 3; ++i)
                    row.mrc_mean[i] = d[i].mean_estimate(batches);
                row.trials = trials;
                auto nvar = [&](Component comp)
                {
                    const auto &e = d[static_cast<std::size_t>(comp)];
                    const double m = e.mean();
                    return e.variance() / (m * m);
                };
                row.inter_normalized_var = nvar(Component::inter);
                row.cont_normalized_var = nvar(Component::cont);
            }
            rows.push_back(row);
        }
        return rows;
    }

    void write_cdf_csv(std::ostream &out, const SystemConfig &config, const EmpiricalDistribution &d)
    {
        out << output_header(config) << '\n' << "value_linear,value_dB,cdf\n";
        const auto &s = d.sorted();
        const double n = static_cast<double>(s.size());
        for (std::size_t i = 0; i < s.size(); ++i)
            out << format_double(s[i]) << ',' << format_double(to_db(s[i])) << ','
                << format_double(static_cast<double>(i + 1) / n) << '\n';
    }

    void write_samples_csv(std::ostream &out, const CampaignResult &result)
    {
        out << output_header(result.config) << '\n'
            << "trial,receiver,k,S,I_intra,I_inter,I_cont,sir,S_dB,I_intra_dB,I_inter_dB,I_cont_dB,sir_dB\n";
        for (std::size_t t = 0; t < result.records.size(); ++t)
            for (const InterferenceSample *s : {&result.records[t].mrc, &result.records[t].zf})
            {
                out << t << ',' << to_string(s->receiver) << ',' << (s->pilot + 1);
                for (double v : {s->signal, s->intra, s->inter, s->cont, s->sir})
                    out << ',' << format_double(v);
                for (double v : {s->signal, s->intra, s->inter, s->cont, s->sir})
                    out << ',' << format_double(to_db(v));
                out << '\n';
            }
    }

    void write_campaign(const CampaignResult &result, const std::filesystem::path &dir)
    {
        std::filesystem::create_directories(dir);
        for (Receiver r : {Receiver::mrc, Receiver::zf})
            for (Component c : all_components)
            {
                std::ofstream out;
                open_for_write(out, dir / (std::string("cdf_") + to_string(r) + "_" + to_string(c) + ".csv"));
                write_cdf_csv(out, result.config, result.distribution(r, c));
            }
        std::ofstream samples;
        open_for_write(samples, dir / "samples.csv");
        write_samples_csv(samples, result);
        std::ofstream summary;
        open_for_write(summary, dir / "summary.json");
        summary << to_json(result).dump(2) << '\n';
    }

    void write_kappa_csv(std::ostream &out, const KappaScan &scan)
    {
        out << output_header(scan.base) << '\n'
            << "M,K,kappa,zf_intra,zf_intra_se,zf_inter,zf_inter_se,mrc_intra,mrc_intra_se,mrc_inter,mrc_inter_se,"
               "zf_intra_norm,zf_inter_norm,mrc_intra_norm,mrc_inter_norm\n";
        for (const auto &r : scan.rows)
        {
            out << r.antennas << ',' << r.pilots << ',' << format_double(scan.kappa);
            for (const BatchEstimate *e : {&r.zf_intra, &r.zf_inter, &r.mrc_intra, &r.mrc_inter})
                out << ',' << format_double(e->value) << ',' << format_double(e->stderr_);
            for (double v : {r.zf_intra_normalized, r.zf_inter_normalized, r.mrc_intra_normalized,
                             r.mrc_inter_normalized})
                out << ',' << format_double(v);
            out << '\n';
        }
    }

    void write_sweep_csv(std::ostream &out, const SystemConfig &config, const std::vector<SweepRow> &rows)
    {
        out << output_header(config) << '\n'
            << "sigma_dB,trials,analytic_intra,analytic_inter,analytic_cont,analytic_var_inter,analytic_var_cont,"
               "analytic_nvar_inter,analytic_nvar_cont,mc_intra,mc_intra_se,mc_inter,mc_inter_se,mc_cont,mc_cont_se,"
               "mc_nvar_inter,mc_nvar_cont\n";
        for (const auto &r : rows)
        {
            out << format_double(r.sigma_db) << ',' << r.trials;
            for (double v : {r.analytic.intra, r.analytic.inter, r.analytic.cont, r.variance.inter, r.variance.cont,
                             r.variance.inter / (r.analytic.inter * r.analytic.inter),
                             r.variance.cont / (r.analytic.cont * r.analytic.cont)})
                out << ',' << format_double(v);
            if (r.trials > 0)
            {
                for (const auto &e : r.mrc_mean)
                    out << ',' << format_double(e.value) << ',' << format_double(e.stderr_);
                out << ',' << format_double(r.inter_normalized_var) << ',' << format_double(r.cont_normalized_var);
            }
            else
                out << ",,,,,,,,";
            out << '\n';
        }
    }

    nlohmann::json to_json(const CampaignResult &r)
    {
        nlohmann::json j;
        j["header"] = header_json(r.config);
        j["config"] = to_json(r.config);
        j["derived"] = to_json(validate(r.config));
        j["probe_pilot"] = r.pilot + 1;
        j["trials"] = r.records.size();
        nlohmann::json dists;
        for (Receiver rec : {Receiver::mrc, Receiver::zf})
            for (Component c : all_components)
            {
                const auto &d = r.distribution(rec, c);
                dists[std::string(to_string(rec)) + "_" + to_string(c)] = {
                    {"mean", estimate_json(d.mean_estimate(batch_count(d.size())))},
                    {"median_dB", nullable(to_db(d.median()))},
                    {"p01_dB", nullable(to_db(d.quantile(0.01)))},
                    {"p99_dB", nullable(to_db(d.quantile(0.99)))}};
            }
        j["distributions"] = dists;
        j["median_gap_mrc_intra_minus_cont_dB"] =
            nullable(to_db(r.mrc[0].median()) - to_db(r.mrc[2].median()));
        j["ordering"] = {{"checked", r.records.size()},
                         {"violations", r.ordering_violations},
                         {"multi_group_trials", r.multi_group_trials}};
        j["analytic"] = to_json(r.analytic);
        j["wall_seconds"] = r.wall_seconds;
        return j;
    }

    nlohmann::json to_json(const MomentReport &r)
    {
        nlohmann::json j;
        j["header"] = header_json(r.config);
        j["config"] = to_json(r.config);
        j["trials"] = r.trials;
        j["truncation"] = {{"P_o_tail", r.truncation.outer}, {"P_o2_tail", r.truncation.outer_sq}};
        nlohmann::json checks = nlohmann::json::array();
        for (const auto &c : r.checks)
            checks.push_back({{"name", c.name},
                              {"empirical", c.empirical},
                              {"stderr", c.stderr_},
                              {"analytic", c.analytic},
                              {"tolerance", c.tolerance},
                              {"gating", c.gating},
                              {"pass", c.pass}});
        j["checks"] = checks;
        j["mrc_inter_over_cont"] = {{"empirical", r.inter_over_cont}, {"analytic", r.inter_over_cont_analytic}};
        j["pass"] = r.pass();
        j["wall_seconds"] = r.wall_seconds;
        return j;
    }

    nlohmann::json to_json(const KappaScan &s)
    {
        nlohmann::json j;
        j["header"] = header_json(s.base);
        j["config"] = to_json(s.base);
        j["kappa"] = s.kappa;
        nlohmann::json rows = nlohmann::json::array();
        for (const auto &r : s.rows)
            rows.push_back({{"M", r.antennas},
                            {"K", r.pilots},
                            {"zf_intra", estimate_json(r.zf_intra)},
                            {"zf_inter", estimate_json(r.zf_inter)},
                            {"mrc_intra", estimate_json(r.mrc_intra)},
                            {"mrc_inter", estimate_json(r.mrc_inter)},
                            {"zf_intra_normalized", r.zf_intra_normalized},
                            {"zf_inter_normalized", r.zf_inter_normalized},
                            {"mrc_intra_normalized", r.mrc_intra_normalized},
                            {"mrc_inter_normalized", r.mrc_inter_normalized}});
        j["rows"] = rows;
        j["spread"] = {{"zf_inter", s.zf_inter_spread},
                       {"zf_intra", s.zf_intra_spread},
                       {"mrc_inter", s.mrc_inter_spread},
                       {"mrc_intra", s.mrc_intra_spread},
                       {"limit", KappaScan::constancy_limit}};
        j["zf_constant"] = s.zf_constant();
        j["mrc_constant"] = s.mrc_constant();
        return j;
    }

    nlohmann::json to_json(const FadingReport &r)
    {
        nlohmann::json j;
        j["header"] = header_json(r.config);
        j["config"] = to_json(r.config);
        j["group_sizes"] = r.group_sizes;
        j["draws"] = r.config.fading_trials;
        j["zf_discarded"] = r.zf.discarded;
        j["zf_discard_rate"] = static_cast<double>(r.zf.discarded) / static_cast<double>(r.zf.draws);
        j["mean_sinr"] = {{"mrc", r.mrc.mean_sinr}, {"zf", r.zf.mean_sinr}};
        nlohmann::json checks = nlohmann::json::array();
        for (const auto &c : r.checks)
            checks.push_back({{"name", c.name},
                              {"measured", c.measured},
                              {"stderr", c.stderr_},
                              {"expected", c.expected},
                              {"error", c.error},
                              {"tolerance", c.tolerance},
                              {"pass", c.pass}});
        j["checks"] = checks;
        j["pass"] = r.pass();
        j["wall_seconds"] = r.wall_seconds;
        return j;
    }

    nlohmann::json analytic_report(const SystemConfig &config)
    {
        nlohmann::json j;
        j["header"] = header_json(config);
        j["config"] = to_json(config);
        j["derived"] = to_json(validate(config));
        j["moments"] = to_json(analytic_moments(config));
        j["dominance_threshold_exact_M_over_K"] = dominance_threshold_exact(config);
        return j;
    }

    void write_figure_bundle(int which, const SystemConfig &config, const std::filesystem::path &dir, int workers,
                             std::int64_t sweep_trials)
    {
        const std::filesystem::path sub = dir / ("fig" + std::to_string(which));
        switch (which)
        {
        case 1:
        case 2:
        {
            SystemConfig c = config;
            c.shadowing_db = which == 1 ? 0.0 : 8.0;
            write_campaign(run_cdf_campaign(c, workers), sub);
            return;
        }
        case 3:
        case 4:
        {
            std::filesystem::create_directories(sub);
            std::vector<double> coarse, fine;
            for (int i = 0; i <= 8; ++i)
                coarse.push_back(i);
            for (int i = 0; i <= 80; ++i)
                fine.push_back(0.1 * i);
            std::ofstream out;
            open_for_write(out, sub / "sweep_mc.csv");
            write_sweep_csv(out, config, run_sigma_sweep(config, coarse, sweep_trials, workers));
            std::ofstream curve;
            open_for_write(curve, sub / "sweep_analytic.csv");
            write_sweep_csv(curve, config, run_sigma_sweep(config, fine, 0, workers));
            return;
        }
        default:
            throw std::invalid_argument("figures: --which must be 1, 2, 3 or 4");
        }
    }
}
