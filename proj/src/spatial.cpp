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

#include "mmimo/spatial.hpp"

#include "batch_kernels.hpp"
#include "text_format.hpp"

#include <numbers>
#include <random>
#include <stdexcept>

namespace mmimo
{
    const char *to_string(Tier tier)
    {
        return tier == Tier::intra_cell ? "intra" : "outer";
    }

    std::size_t PointLayout::outer_count() const
    {
        std::size_t n = 0;
        for (const auto &group : outer)
            n += group.size();
        return n;
    }

    std::vector<UePoint> sample_intra(int count, double radius, RandomStream &rng)
    {
        if (count < 1)
            throw std::invalid_argument("sample_intra: count must be >= 1");
        std::vector<UePoint> points(static_cast<std::size_t>(count));
        for (int k = 0; k < count; ++k)
        {
            auto &p = points[static_cast<std::size_t>(k)];
            p.radius = radius * std::sqrt(rng.uniform());
            p.angle = 2.0 * std::numbers::pi * rng.uniform();
            p.pilot = k;
            p.tier = Tier::intra_cell;
        }
        return points;
    }

    std::vector<UePoint> sample_ppp_annulus(double intensity, double inner, double outer, RandomStream &rng, int pilot)
    {
        if (!(inner > 0.0) || !(outer > inner) || !(intensity > 0.0))
            throw std::invalid_argument("sample_ppp_annulus: need outer > inner > 0 and intensity > 0");

        const double inner_sq = inner * inner;
        const double outer_sq = outer * outer;
        const double mean_count = intensity * std::numbers::pi * (outer_sq - inner_sq);
        std::poisson_distribution<long> count_dist(mean_count);
        const auto n = static_cast<std::size_t>(count_dist(rng));

        thread_local std::vector<double> u, r, a;
        u.resize(n);
        r.resize(n);
        a.resize(n);
        for (auto &v : u)
            v = rng.uniform();
        detail::radii_from_uniform(u.data(), r.data(), n, inner_sq, outer_sq);
        for (auto &v : u)
            v = rng.uniform();
        detail::angles_from_uniform(u.data(), a.data(), n);

        std::vector<UePoint> points(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            // guard the open lower end against rounding in sqrt
            points[i].radius = r[i] > inner ? r[i] : std::nextafter(inner, outer);
            points[i].angle = a[i];
            points[i].pilot = pilot;
            points[i].tier = Tier::outer;
        }
        return points;
    }

    PointLayout sample_layout(const SystemConfig &config, std::uint64_t trial)
    {
        const DerivedConstants derived = validate(config);
        PointLayout layout;
        layout.window_radius = config.trunc_factor * config.cell_radius;

        auto intra_rng = substream(config.seed, trial, StreamTag::intra_positions);
        layout.intra = sample_intra(config.pilots, config.cell_radius, intra_rng);

        layout.outer.resize(static_cast<std::size_t>(config.pilots));
        for (int k = 0; k < config.pilots; ++k)
        {
            auto rng = substream(config.seed, trial, StreamTag::outer_positions, static_cast<std::uint64_t>(k));
            layout.outer[static_cast<std::size_t>(k)] =
                sample_ppp_annulus(derived.intensity, config.cell_radius, layout.window_radius, rng, k);
        }
        return layout;
    }

    void write_layout_csv_header(std::ostream &out)
    {
        out << "trial,tier,pilot_index,x_m,y_m\n";
    }

    void write_layout_csv(std::ostream &out, std::uint64_t trial, const PointLayout &layout)
    {
        auto row = [&](const UePoint &p)
        {
            const Position pos = p.position();
            out << trial << ',' << to_string(p.tier) << ',' << (p.pilot + 1) << ',' << format_double(pos.x) << ','
                << format_double(pos.y) << '\n';
        };
        for (const auto &p : layout.intra)
            row(p);
        for (const auto &group : layout.outer)
            for (const auto &p : group)
                row(p);
    }
}
