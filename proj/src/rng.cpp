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

#include "mmimo/rng.hpp"

#include "batch_kernels.hpp"

#include <algorithm>
#include <vector>

namespace mmimo
{
    void standard_normals(RandomStream &rng, std::span<double> out)
    {
        const std::size_t npairs = (out.size() + 1) / 2;
        thread_local std::vector<double> u1, u2, z;
        u1.resize(npairs);
        u2.resize(npairs);
        z.resize(2 * npairs);
        for (std::size_t i = 0; i < npairs; ++i)
        {
            u1[i] = rng.uniform_positive();
            u2[i] = rng.uniform();
        }
        detail::box_muller(u1.data(), u2.data(), z.data(), npairs);
        std::copy_n(z.begin(), out.size(), out.begin());
    }
}
