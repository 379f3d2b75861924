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

#ifndef MMIMO_RNG_HPP
#define MMIMO_RNG_HPP

#include <array>
#include <cstdint>
#include <limits>
#include <span>

namespace mmimo
{
    inline std::uint64_t splitmix64(std::uint64_t &state)
    {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // xoshiro256++ (Blackman & Vigna). Satisfies UniformRandomBitGenerator.
    class RandomStream
    {
    public:
        using result_type = std::uint64_t;

        explicit RandomStream(std::uint64_t seed = 0)
        {
            for (auto &w : s_)
                w = splitmix64(seed);
        }

        static constexpr result_type min() { return 0; }
        static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

        result_type operator()()
        {
            const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
            const std::uint64_t t = s_[1] << 17;
            s_[2] ^= s_[0];
            s_[3] ^= s_[1];
            s_[1] ^= s_[2];
            s_[0] ^= s_[3];
            s_[2] ^= t;
            s_[3] = rotl(s_[3], 45);
            return result;
        }

        // uniform on [0, 1), 53-bit resolution
        double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
        // uniform on (0, 1]
        double uniform_positive() { return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53; }

        bool operator==(const RandomStream &) const = default;

    private:
        static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
        std::array<std::uint64_t, 4> s_{};
    };

    // Purpose tags for counter-based substreams. A substream is a pure function
    // of (seed, trial, tag, index), so results never depend on the worker schedule.
    enum class StreamTag : std::uint64_t
    {
        intra_positions = 1,
        outer_positions = 2,
        intra_shadowing = 3,
        outer_shadowing = 4,
        fading = 5,
        asymptotic = 6,
    };

    inline RandomStream substream(std::uint64_t seed, std::uint64_t trial, StreamTag tag, std::uint64_t index = 0)
    {
        std::uint64_t st = seed;
        std::uint64_t key = splitmix64(st);
        st = key ^ trial;
        key = splitmix64(st);
        st = key ^ static_cast<std::uint64_t>(tag);
        key = splitmix64(st);
        st = key ^ index;
        return RandomStream(splitmix64(st));
    }

    // Fills `out` with i.i.d. N(0, 1) draws (Box-Muller on pairs).
    void standard_normals(RandomStream &rng, std::span<double> out);
}

#endif
