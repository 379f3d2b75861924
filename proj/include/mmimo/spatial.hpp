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

#ifndef MMIMO_SPATIAL_HPP
#define MMIMO_SPATIAL_HPP

#include "mmimo/config.hpp"
#include "mmimo/rng.hpp"

#include <cmath>
#include <cstdint>
#include <ostream>
#include <vector>

namespace mmimo
{
    enum class Tier
    {
        intra_cell,
        outer
    };

    const char *to_string(Tier tier);

    struct Position
    {
        double x = 0.0; // m
        double y = 0.0; // m
    };

    // A UE location relative to the typical BS at the origin. Stored in polar
    // form because every downstream quantity depends on the distance only.
    struct UePoint
    {
        double radius = 0.0; // m
        double angle = 0.0;  // rad
        int pilot = 0;       // 0-based pilot index
        Tier tier = Tier::intra_cell;

        Position position() const { return {radius * std::cos(angle), radius * std::sin(angle)}; }
    };

    struct PointLayout
    {
        std::vector<UePoint> intra;              // one UE per pilot, intra[k].pilot == k
        std::vector<std::vector<UePoint>> outer; // outer[k]: UEs reusing pilot k outside the cell
        double window_radius = 0.0;              // m

        std::size_t outer_count() const;
    };

    // `count` points i.i.d. uniform on the disk of radius `radius` (r = R sqrt(u)).
    std::vector<UePoint> sample_intra(int count, double radius, RandomStream &rng);

    // Homogeneous PPP of the given intensity on the annulus (inner, outer]:
    // Poisson count, then i.i.d. uniform placement via inverse CDF on r^2.
    std::vector<UePoint> sample_ppp_annulus(double intensity, double inner, double outer, RandomStream &rng,
                                            int pilot = 0);

    // One full layout for spatial trial `trial`. Each pilot group draws from its
    // own substream, so the result is independent of evaluation order.
    PointLayout sample_layout(const SystemConfig &config, std::uint64_t trial);

    // CSV rows: trial,tier,pilot_index,x_m,y_m (pilot_index is 1-based).
    void write_layout_csv_header(std::ostream &out);
    void write_layout_csv(std::ostream &out, std::uint64_t trial, const PointLayout &layout);
}

#endif
