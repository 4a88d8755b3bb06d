// SPDX-License-Identifier: Apache-2.0
//
// fabcor c++ library for fluid-antenna correlation modelling and outage analysis
// Copyright (C) 2026 the fabcor authors
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

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace fabcor
{

// Deterministic 64-bit generator for the Monte Carlo engine: xoshiro256++
// (Blackman & Vigna) seeded through SplitMix64, with the canonical 2^128
// jump polynomial providing non-overlapping substreams per partition.
// Every constant is pinned here so runs reproduce across platforms.
class Xoshiro256pp
{
  public:
    // substream `stream` of the generator family identified by `seed`
    explicit Xoshiro256pp(std::uint64_t seed, std::uint64_t stream = 0)
    {
        std::uint64_t x = seed;
        for (auto &word : s)
            word = splitmix64(x);
        if ((s[0] | s[1] | s[2] | s[3]) == 0)
            s[0] = 0x9E3779B97F4A7C15ULL; // all-zero state is invalid
        for (std::uint64_t k = 0; k < stream; k++)
            jump();
    }

    std::uint64_t next()
    {
        const std::uint64_t result = rotl(s[0] + s[3], 23) + s[0];
        const std::uint64_t t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = rotl(s[3], 45);
        return result;
    }

    // uniform double in (0, 1]: 53-bit mantissa, never zero so logarithms
    // stay finite
    double uniform_open()
    {
        return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
    }

    // standard complex Gaussian, variance 1/2 per real component so that
    // E|z|^2 = 1; polar Box-Muller with |z|^2 ~ Exp(1)
    std::complex<double> standard_complex_normal()
    {
        const double mag = std::sqrt(-std::log(uniform_open()));
        const double phase = 2.0 * std::numbers::pi * uniform_open();
        return {mag * std::cos(phase), mag * std::sin(phase)};
    }

  private:
    static std::uint64_t rotl(std::uint64_t v, int k)
    {
        return (v << k) | (v >> (64 - k));
    }

    static std::uint64_t splitmix64(std::uint64_t &x)
    {
        x += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // advance the state by 2^128 steps
    void jump()
    {
        static constexpr std::uint64_t tap[4] = {0x180EC6D33CFD0ABAULL, 0xD5A61266F0C9392CULL,
                                                 0xA9582618E03FC9AAULL, 0x39ABDC4529B1661CULL};
        std::uint64_t acc[4] = {0, 0, 0, 0};
        for (std::uint64_t word : tap)
            for (int bit = 0; bit < 64; bit++)
            {
                if (word & (1ULL << bit))
                    for (int i = 0; i < 4; i++)
                        acc[i] ^= s[i];
                next();
            }
        for (int i = 0; i < 4; i++)
            s[i] = acc[i];
    }

    std::uint64_t s[4];
};

} // namespace fabcor
