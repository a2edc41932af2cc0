// SPDX-License-Identifier: Apache-2.0
//
// hris-uav: joint channel and direction estimation for HRIS-assisted UAV links
// Copyright (C) 2026 The hris-uav authors
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

#ifndef HRIS_RNG_HPP
#define HRIS_RNG_HPP

#include <cstdint>
#include <initializer_list>
#include <random>

#include "hris/types.hpp"

namespace hris
{
    using Rng = std::mt19937_64;

    // splitmix64 finalizer
    constexpr std::uint64_t mix64(std::uint64_t x)
    {
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    // Order-sensitive hash of a seed and a list of stream indices.
    constexpr std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> indices)
    {
        std::uint64_t h = mix64(seed);
        for (auto i : indices)
            h = mix64(h ^ mix64(i + 0x632BE59BD9B4E019ULL));
        return h;
    }

    // Circularly-symmetric complex Gaussian CN(0, variance), drawn in index order.
    inline CVector complex_gaussian(Eigen::Index n, double variance, Rng &rng)
    {
        std::normal_distribution<double> normal(0.0, 1.0);
        const double s = std::sqrt(variance / 2.0);
        CVector out(n);
        for (Eigen::Index i = 0; i < n; ++i)
        {
            const double re = normal(rng);
            const double im = normal(rng);
            out(i) = cdouble(s * re, s * im);
        }
        return out;
    }
}

#endif
