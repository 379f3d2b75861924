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


// Small-scale fading oracle: explicit Rayleigh channels, MMSE training on
// the shared pilots, MRC / ZF receive vectors and per-origin powers measured
// draw by draw. Meant for reduced instances; cost is O(M N) per draw for N
// UEs in scope.

#ifndef MMIMO_FADING_HPP
#define MMIMO_FADING_HPP

#include "mmimo/config.hpp"
#include "mmimo/interference.hpp"
#include "mmimo/propagation.hpp"
#include "mmimo/rng.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <vector>

namespace mmimo
{
    // One draw of every channel in scope. Columns follow the state: intra
    // column k is x_k, outer[k] column i is the i-th UE of Phi_k.
    struct ChannelDraw
    {
        Eigen::MatrixXcd intra;                   // g_{x_k} = sqrt(beta) h
        std::vector<Eigen::MatrixXcd> outer;      // g_y, y in Phi_k
        Eigen::MatrixXcd observation;             // o_k = sum of the group's g + training noise
        Eigen::MatrixXcd estimate;                // G0_hat, column k = C_{x_k} o_k
        Eigen::MatrixXcd intra_error;             // g_{x_k} - g_hat_{x_k}
        std::vector<Eigen::MatrixXcd> outer_error; // g_y - C_y o_k

        Eigen::Index antennas() const { return intra.rows(); }
    };

    // Draws h for every UE of `state` (which must carry per-UE outer gains)
    // and performs the MMSE estimation. Training noise enters o_k only when
    // the config is not interference limited.
    ChannelDraw estimate_channels(const LargeScaleState &state, const SystemConfig &config, RandomStream &rng);

    // w_k = sqrt(alpha_k / M) g_hat / |g_hat|. Throws std::domain_error for a zero estimate.
    Eigen::VectorXcd mrc_receiver(const Eigen::MatrixXcd &estimate, const LargeScaleState &state, int pilot);

    struct ZfVector
    {
        Eigen::VectorXcd w;        // column k of G0_hat (G0_hat^H G0_hat)^-1
        double inv_gram_kk = 0.0;  // [(G0_hat^H G0_hat)^-1]_kk = |w|^2
    };

    // Via a Householder QR of G0_hat. nullopt when the triangular factor is
    // numerically singular (smallest/largest |R_ii| below 1e-10).
    std::optional<ZfVector> zf_receiver(const Eigen::MatrixXcd &estimate, int pilot);

    struct ComponentStat
    {
        double mean = 0.0;
        double stderr_ = 0.0;
    };

    struct FadingMeasurement
    {
        Receiver receiver = Receiver::mrc;
        int pilot = 0;
        std::int64_t draws = 0;     // requested
        std::int64_t discarded = 0; // singular ZF draws
        ComponentStat signal, intra, inter, cont;
        // Pilot-group powers before the split into cont and inter:
        // sum over Phi_k of |w^H g_y|^2.
        ComponentStat reuse_group;
        double mean_sinr = 0.0;
        // ZF only: largest per-draw relative gap between the direct SINR and
        // the simplified closed form, and the normalized inverse Gram diagonal
        // [G^-1]_kk (M - K) beta^2 / alpha.
        double max_sinr_form_gap = 0.0;
        ComponentStat wishart_ratio;

        std::int64_t used() const { return draws - discarded; }
        const ComponentStat &component(Component c) const;
    };

    // Monte Carlo over `draws` independent fading draws of a fixed large-scale
    // state, draw d using substream(seed, d, fading).
    //
    // MRC: intra = sum_{k' != k} |w^H g_{x_k'}|^2 + |w^H g~_{x_k}|^2,
    //      cont  = (M-1)/M sum_{Phi_k} |w^H g^_y|^2,
    //      inter = sum_{Phi \ Phi_k} |w^H g_y|^2 + sum_{Phi_k} |w^H g~_y|^2 + 1/M sum_{Phi_k} |w^H g^_y|^2.
    // ZF (w scaled by beta_{x_k}):
    //      intra = sum_{Phi_0} |w^H g~_y|^2, inter = sum_{Phi} |w^H g~_y|^2, cont = sum_{Phi_k} |w^H g^_y|^2.
    FadingMeasurement measure_components(const LargeScaleState &state, int pilot, Receiver receiver,
                                         const SystemConfig &config, std::int64_t draws, std::uint64_t seed);
}

#endif
