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

#include "mmimo/propagation.hpp"

#include "batch_kernels.hpp"
#include "text_format.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace mmimo
{
    double path_loss(double distance, const SystemConfig &config)
    {
        if (distance < config.ref_distance)
            return config.ref_gain;
        return config.ref_gain * std::pow(distance / config.ref_distance, -config.pathloss_exponent);
    }

    double sample_shadowing(double shadowing_db, RandomStream &rng)
    {
        if (shadowing_db == 0.0)
            return 1.0;
        double z = 0.0;
        standard_normals(rng, {&z, 1});
        return std::pow(10.0, shadowing_db * z / 10.0);
    }

    LargeScaleState assemble_state(std::vector<UeGain> intra, std::vector<std::vector<UeGain>> outer,
                                   const SystemConfig &config)
    {
        if (intra.empty() || intra.size() != outer.size())
            throw std::invalid_argument("assemble_state: need one outer group per intra-cell UE");

        LargeScaleState s;
        s.noise_term = config.interference_limited ? 0.0 : 1.0 / config.pilot_power;
        s.intra = std::move(intra);
        s.outer = std::move(outer);
        const std::size_t K = s.intra.size();
        s.alpha.resize(K);
        s.totals.resize(K);

        for (std::size_t k = 0; k < K; ++k)
        {
            GroupTotals t;
            t.count = s.outer[k].size();
            for (const auto &g : s.outer[k])
            {
                if (!(g.beta > 0.0))
                    throw std::invalid_argument("assemble_state: every beta must be positive");
                t.beta += g.beta;
            }
            if (!(s.intra[k].beta > 0.0))
                throw std::invalid_argument("assemble_state: every beta must be positive");

            const double alpha = s.intra[k].beta + t.beta + s.noise_term;
            s.alpha[k] = alpha;
            UeGain &x = s.intra[k];
            x.mmse_weight = x.beta / alpha;
            // (1 - C) beta = beta (alpha - beta) / alpha, with alpha - beta formed from its parts
            x.error_power = x.beta * (t.beta + s.noise_term) / alpha;
            for (auto &g : s.outer[k])
            {
                g.mmse_weight = g.beta / alpha;
                g.error_power = g.beta * (x.beta + s.noise_term + (t.beta - g.beta)) / alpha;
                t.beta_sq += g.beta * g.beta;
                t.error += g.error_power;
            }
            s.totals[k] = t;
        }
        return s;
    }

    LargeScaleState state_from_betas(const std::vector<double> &intra, const std::vector<std::vector<double>> &outer,
                                     const SystemConfig &config)
    {
        auto gain = [](double b)
        {
            UeGain g;
            g.path_loss = b;
            g.shadowing = 1.0;
            g.beta = b;
            return g;
        };
        std::vector<UeGain> in;
        for (double b : intra)
            in.push_back(gain(b));
        std::vector<std::vector<UeGain>> out(outer.size());
        for (std::size_t k = 0; k < outer.size(); ++k)
            for (double b : outer[k])
                out[k].push_back(gain(b));
        return assemble_state(std::move(in), std::move(out), config);
    }

    namespace
    {
        // p and eta for `n` radii; eta from one shadowing substream
        void gains_from_radii(const double *radius, std::size_t n, const SystemConfig &config,
                              RandomStream &shadow_rng, std::vector<double> &p, std::vector<double> &eta)
        {
            thread_local std::vector<double> z;
            p.resize(n);
            detail::path_loss_batch(radius, p.data(), n, config.ref_distance, config.ref_gain,
                                    config.pathloss_exponent);
            eta.assign(n, 1.0);
            if (config.shadowing_db > 0.0)
            {
                z.resize(n);
                standard_normals(shadow_rng, z);
                detail::exp_scaled(z.data(), eta.data(), n, config.shadowing_db / db_per_neper());
            }
        }

        std::vector<UeGain> gains_for(const std::vector<UePoint> &points, const SystemConfig &config,
                                      RandomStream &shadow_rng)
        {
            const std::size_t n = points.size();
            thread_local std::vector<double> radius, p, eta;
            radius.resize(n);
            for (std::size_t i = 0; i < n; ++i)
                radius[i] = points[i].radius;
            gains_from_radii(radius.data(), n, config, shadow_rng, p, eta);

            std::vector<UeGain> gains(n);
            for (std::size_t i = 0; i < n; ++i)
            {
                gains[i].path_loss = p[i];
                gains[i].shadowing = eta[i];
                gains[i].beta = p[i] * eta[i];
            }
            return gains;
        }
    }

    LargeScaleState summarize_trial(const SystemConfig &config, std::uint64_t trial)
    {
        const DerivedConstants derived = validate(config);
        const auto K = static_cast<std::size_t>(config.pilots);
        const double window = config.trunc_factor * config.cell_radius;
        const double inner_sq = config.cell_radius * config.cell_radius;
        const double outer_sq = window * window;
        const double inner_next = std::nextafter(config.cell_radius, window);

        LargeScaleState s;
        s.noise_term = config.interference_limited ? 0.0 : 1.0 / config.pilot_power;
        {
            auto pos = substream(config.seed, trial, StreamTag::intra_positions);
            auto shadow = substream(config.seed, trial, StreamTag::intra_shadowing);
            s.intra = gains_for(sample_intra(config.pilots, config.cell_radius, pos), config, shadow);
        }
        s.outer.resize(K);
        s.alpha.resize(K);
        s.totals.resize(K);

        // same draws, in the same order, as sample_layout + build_large_scale; angles are never drawn
        std::poisson_distribution<long> count_dist(derived.intensity * std::numbers::pi * (outer_sq - inner_sq));
        thread_local std::vector<double> u, radius, p, eta;
        for (std::size_t k = 0; k < K; ++k)
        {
            auto pos = substream(config.seed, trial, StreamTag::outer_positions, k);
            count_dist.reset();
            const auto n = static_cast<std::size_t>(count_dist(pos));
            u.resize(n);
            radius.resize(n);
            for (auto &v : u)
                v = pos.uniform();
            detail::radii_from_uniform(u.data(), radius.data(), n, inner_sq, outer_sq);
            for (auto &r : radius)
                r = r > config.cell_radius ? r : inner_next;
            auto shadow = substream(config.seed, trial, StreamTag::outer_shadowing, k);
            gains_from_radii(radius.data(), n, config, shadow, p, eta);

            GroupTotals t;
            t.count = n;
            for (std::size_t i = 0; i < n; ++i)
            {
                p[i] *= eta[i];
                if (!(p[i] > 0.0))
                    throw std::invalid_argument("summarize_trial: every beta must be positive");
                t.beta += p[i];
            }
            UeGain &x = s.intra[k];
            const double alpha = x.beta + t.beta + s.noise_term;
            s.alpha[k] = alpha;
            x.mmse_weight = x.beta / alpha;
            x.error_power = x.beta * (t.beta + s.noise_term) / alpha;
            for (std::size_t i = 0; i < n; ++i)
            {
                const double b = p[i];
                t.beta_sq += b * b;
                t.error += b * (x.beta + s.noise_term + (t.beta - b)) / alpha;
            }
            s.totals[k] = t;
        }
        return s;
    }

    LargeScaleState build_large_scale(const PointLayout &layout, const SystemConfig &config, std::uint64_t trial)
    {
        if (layout.intra.size() != layout.outer.size())
            throw std::invalid_argument("build_large_scale: malformed layout");

        auto intra_rng = substream(config.seed, trial, StreamTag::intra_shadowing);
        std::vector<UeGain> intra = gains_for(layout.intra, config, intra_rng);

        std::vector<std::vector<UeGain>> outer(layout.outer.size());
        for (std::size_t k = 0; k < layout.outer.size(); ++k)
        {
            auto rng = substream(config.seed, trial, StreamTag::outer_shadowing, k);
            outer[k] = gains_for(layout.outer[k], config, rng);
        }
        return assemble_state(std::move(intra), std::move(outer), config);
    }

    void write_state_csv_header(std::ostream &out)
    {
        out << "trial,tier,pilot_index,x_m,y_m,p,eta,beta,C\n";
    }

    void write_state_csv(std::ostream &out, std::uint64_t trial, const PointLayout &layout,
                         const LargeScaleState &state)
    {
        auto row = [&](const UePoint &pt, const UeGain &g)
        {
            const Position pos = pt.position();
            out << trial << ',' << to_string(pt.tier) << ',' << (pt.pilot + 1) << ',' << format_double(pos.x) << ','
                << format_double(pos.y) << ',' << format_double(g.path_loss) << ',' << format_double(g.shadowing)
                << ',' << format_double(g.beta) << ',' << format_double(g.mmse_weight) << '\n';
        };
        for (std::size_t k = 0; k < layout.intra.size(); ++k)
            row(layout.intra[k], state.intra[k]);
        for (std::size_t k = 0; k < layout.outer.size(); ++k)
            for (std::size_t i = 0; i < layout.outer[k].size(); ++i)
                row(layout.outer[k][i], state.outer[k][i]);
    }
}
