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

#ifndef MMIMO_PROPAGATION_HPP
#define MMIMO_PROPAGATION_HPP

#include "mmimo/config.hpp"
#include "mmimo/rng.hpp"
#include "mmimo/spatial.hpp"

#include <cstdint>
#include <vector>

namespace mmimo
{
    // Bounded close-in model: ref_gain below ref_distance, power law beyond.
    double path_loss(double distance, const SystemConfig &config);

    // eta = 10^(g/10), g ~ N(0, sigma_db^2). Returns exactly 1 for sigma_db == 0.
    double sample_shadowing(double shadowing_db, RandomStream &rng);

    struct UeGain
    {
        double path_loss = 0.0;    // p_x
        double shadowing = 1.0;    // eta_x
        double beta = 0.0;         // p_x * eta_x
        double mmse_weight = 0.0;  // C_y = beta_y / alpha_k
        double error_power = 0.0;  // (1 - C_y) beta_y, per-antenna variance of the estimation error
    };

    // Sums over the outer UEs of one pilot group.
    struct GroupTotals
    {
        std::size_t count = 0;
        double beta = 0.0;       // sum beta_y
        double beta_sq = 0.0;    // sum beta_y^2
        double error = 0.0;      // sum (1 - C_y) beta_y
    };

    // Large-scale state of one spatial realization. Everything the fading
    // averages of the interference need is here; small-scale fading is not.
    struct LargeScaleState
    {
        std::vector<UeGain> intra;              // x_k, indexed by pilot
        std::vector<std::vector<UeGain>> outer; // Phi_k, indexed by pilot
        std::vector<double> alpha;              // alpha_k = beta_{x_k} + sum_{Phi_k} beta + noise_term
        std::vector<GroupTotals> totals;        // per-group sums over Phi_k
        double noise_term = 0.0;                // 1/rho_p, or 0 when interference limited

        int pilots() const { return static_cast<int>(intra.size()); }
    };

    // Fills alpha, mmse weights and group totals from the per-UE gains.
    LargeScaleState assemble_state(std::vector<UeGain> intra, std::vector<std::vector<UeGain>> outer,
                                   const SystemConfig &config);

    // Convenience for hand-built instances: path_loss = beta, shadowing = 1.
    LargeScaleState state_from_betas(const std::vector<double> &intra, const std::vector<std::vector<double>> &outer,
                                     const SystemConfig &config);

    // Path loss for every UE of the layout plus i.i.d. shadowing drawn from the
    // shadowing substreams of `trial`.
    LargeScaleState build_large_scale(const PointLayout &layout, const SystemConfig &config, std::uint64_t trial);

    // Same realization as build_large_scale(sample_layout(config, trial), config,
    // trial), reduced to what the fading-averaged interference needs: intra
    // gains, alpha and the group totals. `outer` holds K empty groups.
    LargeScaleState summarize_trial(const SystemConfig &config, std::uint64_t trial);

    // Optional per-trial dump: trial,tier,pilot_index,x_m,y_m,p,eta,beta,C
    void write_state_csv_header(std::ostream &out);
    void write_state_csv(std::ostream &out, std::uint64_t trial, const PointLayout &layout,
                         const LargeScaleState &state);
}

#endif
