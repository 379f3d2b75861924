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

#ifndef MMIMO_INTERFERENCE_HPP
#define MMIMO_INTERFERENCE_HPP

#include "mmimo/config.hpp"
#include "mmimo/propagation.hpp"

#include <string>

namespace mmimo
{
    enum class Receiver
    {
        mrc,
        zf
    };

    const char *to_string(Receiver receiver);

    enum class Component
    {
        intra,
        inter,
        cont
    };

    const char *to_string(Component component);

    // Interference powers of the uplink of pilot `pilot`, averaged over
    // small-scale fading, for one spatial realization.
    //
    // MRC uses w = sqrt(alpha_k / M) g_hat / |g_hat|. ZF powers are reported
    // for the receive vector scaled by beta_{x_k}, so both receivers share the
    // signal term beta_{x_k}^2 and SIRs are directly comparable.
    struct InterferenceSample
    {
        Receiver receiver = Receiver::mrc;
        int pilot = 0;
        double signal = 0.0;
        double intra = 0.0;
        double inter = 0.0;
        double cont = 0.0;
        double sir = 0.0; // signal / (intra + inter + cont); +inf when interference free

        double total() const { return intra + inter + cont; }
        double component(Component c) const;
    };

    InterferenceSample mrc_components(const LargeScaleState &state, int pilot, const SystemConfig &config);

    // Throws ConfigError("M") when antennas <= pilots.
    InterferenceSample zf_components(const LargeScaleState &state, int pilot, const SystemConfig &config);

    struct OrderingCheck
    {
        double zf_intra = 0.0;
        double zf_inter = 0.0;
        double upper = 0.0;         // M/(M-K) * MRC inter
        bool all_groups_multi = false; // every reuse group has >= 2 UEs
        bool non_strict = false;    // zf_intra <= zf_inter <= upper
        bool strict = false;        // zf_intra <  zf_inter <  upper

        // what the ordering guarantees for this realization: strict when every
        // group has at least two reusing UEs, non-strict otherwise
        bool holds() const { return all_groups_multi ? strict : non_strict; }
    };

    OrderingCheck ordering_check(const LargeScaleState &state, int pilot, const SystemConfig &config);
}

#endif
