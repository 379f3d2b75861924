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

// Bulk per-point transforms. Compiled in a separate translation unit so the
// transcendental loops can be vectorized; callers pass pre-drawn uniforms.

#ifndef MMIMO_BATCH_KERNELS_HPP
#define MMIMO_BATCH_KERNELS_HPP

#include <cstddef>

namespace mmimo::detail
{
    // radius[i] = sqrt(inner_sq + u[i] * (outer_sq - inner_sq))
    void radii_from_uniform(const double *u, double *radius, std::size_t n, double inner_sq, double outer_sq);

    // angle[i] = 2 pi u[i]
    void angles_from_uniform(const double *u, double *angle, std::size_t n);

    // gain[i] = a0 for r < d0, a0 (r/d0)^-gamma otherwise
    void path_loss_batch(const double *radius, double *gain, std::size_t n, double ref_distance, double ref_gain,
                         double exponent);

    // Box-Muller: u1 in (0, 1], u2 in [0, 1); writes 2 * npairs normals.
    void box_muller(const double *u1, const double *u2, double *z, std::size_t npairs);

    // eta[i] = exp(scale * z[i])
    void exp_scaled(const double *z, double *eta, std::size_t n, double scale);
}

#endif
