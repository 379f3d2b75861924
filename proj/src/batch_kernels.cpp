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

// NOTE: built with -ffast-math (see src/CMakeLists.txt). Inputs are finite by
// construction; nothing here may rely on inf/nan semantics.

#include "batch_kernels.hpp"

#include <cmath>

namespace mmimo::detail
{
    void radii_from_uniform(const double *__restrict u, double *__restrict radius, std::size_t n, double inner_sq,
                            double outer_sq)
    {
        const double span = outer_sq - inner_sq;
        for (std::size_t i = 0; i < n; ++i)
            radius[i] = std::sqrt(inner_sq + u[i] * span);
    }

    void angles_from_uniform(const double *__restrict u, double *__restrict angle, std::size_t n)
    {
        constexpr double two_pi = 6.283185307179586476925;
        for (std::size_t i = 0; i < n; ++i)
            angle[i] = two_pi * u[i];
    }

    void path_loss_batch(const double *__restrict radius, double *__restrict gain, std::size_t n, double ref_distance,
                         double ref_gain, double exponent)
    {
        const double inv_d0 = 1.0 / ref_distance;
        for (std::size_t i = 0; i < n; ++i)
        {
            const double rel = std::fmax(radius[i] * inv_d0, 1.0);
            gain[i] = ref_gain * std::exp(-exponent * std::log(rel));
        }
    }

    // cos and sin in separate loops; a fused sincos call does not vectorize.
    void box_muller(const double *__restrict u1, const double *__restrict u2, double *__restrict z,
                    std::size_t npairs)
    {
        constexpr double two_pi = 6.283185307179586476925;
        double *__restrict z0 = z;
        double *__restrict z1 = z + npairs;
        // z1 holds the radius until the last loop
        for (std::size_t i = 0; i < npairs; ++i)
            z1[i] = std::sqrt(-2.0 * std::log(u1[i]));
        for (std::size_t i = 0; i < npairs; ++i)
            z0[i] = z1[i] * std::cos(two_pi * u2[i]);
        for (std::size_t i = 0; i < npairs; ++i)
            z1[i] *= std::sin(two_pi * u2[i]);
    }

    void exp_scaled(const double *__restrict z, double *__restrict eta, std::size_t n, double scale)
    {
        for (std::size_t i = 0; i < n; ++i)
            eta[i] = std::exp(scale * z[i]);
    }
}
