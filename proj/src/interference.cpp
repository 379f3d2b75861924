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

#include "mmimo/interference.hpp"

#include <limits>
#include <stdexcept>

namespace mmimo
{
    const char *to_string(Receiver receiver)
    {
        return receiver == Receiver::mrc ? "mrc" : "zf";
    }

    const char *to_string(Component component)
    {
        switch (component)
        {
        case Component::intra:
            return "intra";
        case Component::inter:
            return "inter";
        case Component::cont:
            return "cont";
        }
        return "?";
    }

    double InterferenceSample::component(Component c) const
    {
        switch (c)
        {
        case Component::intra:
            return intra;
        case Component::inter:
            return inter;
        case Component::cont:
            return cont;
        }
        return 0.0;
    }

    namespace
    {
        void check_pilot(const LargeScaleState &state, int pilot)
        {
            if (pilot < 0 || pilot >= state.pilots())
                throw std::out_of_range("pilot index out of range");
        }

        void finish(InterferenceSample &s)
        {
            const double total = s.total();
            s.sir = total > 0.0 ? s.signal / total : std::numeric_limits<double>::infinity();
        }

        struct Sums
        {
            double intra_beta = 0.0;   // sum over Phi_0 of beta
            double intra_error = 0.0;  // sum over Phi_0 of (1 - C) beta
            double outer_beta = 0.0;   // sum over Phi of beta
            double outer_error = 0.0;  // sum over Phi of (1 - C) beta
        };

        Sums sums_of(const LargeScaleState &state)
        {
            Sums s;
            for (std::size_t k = 0; k < state.intra.size(); ++k)
            {
                const UeGain &x = state.intra[k];
                s.intra_beta += x.beta;
                s.intra_error += x.error_power;
                s.outer_beta += state.totals[k].beta;
                s.outer_error += state.totals[k].error;
            }
            return s;
        }
    }

    InterferenceSample mrc_components(const LargeScaleState &state, int pilot, const SystemConfig &config)
    {
        check_pilot(state, pilot);
        const auto k = static_cast<std::size_t>(pilot);
        const double M = config.antennas;
        const UeGain &x = state.intra[k];
        const double scale = state.alpha[k] / M;
        const Sums s = sums_of(state);

        InterferenceSample out;
        out.receiver = Receiver::mrc;
        out.pilot = pilot;
        out.signal = x.beta * x.beta;
        // sum over Phi_0 of beta minus C_{x_k} beta_{x_k}, without the cancellation
        out.intra = scale * ((s.intra_beta - x.beta) + x.error_power);
        out.inter = scale * s.outer_beta;
        out.cont = (M - 1.0) / M * state.totals[k].beta_sq;
        finish(out);
        return out;
    }

    InterferenceSample zf_components(const LargeScaleState &state, int pilot, const SystemConfig &config)
    {
        check_pilot(state, pilot);
        if (config.antennas <= state.pilots())
            throw ConfigError("M", "zero forcing requires more antennas than pilots");
        const auto k = static_cast<std::size_t>(pilot);
        const UeGain &x = state.intra[k];
        const double scale = state.alpha[k] / static_cast<double>(config.antennas - state.pilots());
        const Sums s = sums_of(state);

        InterferenceSample out;
        out.receiver = Receiver::zf;
        out.pilot = pilot;
        out.signal = x.beta * x.beta;
        out.intra = scale * s.intra_error;
        out.inter = scale * s.outer_error;
        out.cont = state.totals[k].beta_sq;
        finish(out);
        return out;
    }

    OrderingCheck ordering_check(const LargeScaleState &state, int pilot, const SystemConfig &config)
    {
        const InterferenceSample zf = zf_components(state, pilot, config);
        const InterferenceSample mrc = mrc_components(state, pilot, config);
        const double M = config.antennas;
        const double K = state.pilots();

        OrderingCheck c;
        c.zf_intra = zf.intra;
        c.zf_inter = zf.inter;
        c.upper = M / (M - K) * mrc.inter;
        c.all_groups_multi = true;
        for (const auto &t : state.totals)
            c.all_groups_multi = c.all_groups_multi && t.count >= 2;
        c.strict = c.zf_intra < c.zf_inter && c.zf_inter < c.upper;
        // relative slack for equality cases that only hold up to rounding
        const double slack = 1e-12;
        c.non_strict = c.zf_intra <= c.zf_inter * (1.0 + slack) && c.zf_inter <= c.upper * (1.0 + slack);
        return c;
    }
}
