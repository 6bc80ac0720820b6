// SPDX-License-Identifier: Apache-2.0
//
// a2a-mimo: Monte Carlo simulator for aerial mmWave MU-MIMO uplinks
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

#ifndef A2A_MIMO_RANDOM_HPP
#define A2A_MIMO_RANDOM_HPP

#include <concepts>
#include <cstdint>
#include <limits>
#include <random>

namespace a2a
{
    // Per-trial engine. mt19937_64 output is fixed by the standard, so streams are identical
    // across platforms and standard libraries.
    using TrialStream = std::mt19937_64;

    template <typename E>
    concept Uniform64Engine = std::uniform_random_bit_generator<E> &&
                              E::min() == 0 && E::max() == std::numeric_limits<std::uint64_t>::max();

    // Uniform double in [0, 1) from the top 53 bits of one draw. Used instead of
    // std::uniform_real_distribution, whose algorithm is implementation-defined.
    template <Uniform64Engine E>
    double uniform01(E &engine)
    {
        return double(engine() >> 11) * 0x1.0p-53;
    }

    constexpr std::uint64_t splitmix64(std::uint64_t x)
    {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    // Seed of trial t at user count n: splitmix64(splitmix64(splitmix64(master) ^ n) ^ t).
    // Stateless, so any execution order yields the same streams.
    constexpr std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t n_ue, std::uint64_t trial)
    {
        return splitmix64(splitmix64(splitmix64(master_seed) ^ n_ue) ^ trial);
    }

    inline TrialStream trial_stream(std::uint64_t master_seed, std::uint64_t n_ue, std::uint64_t trial)
    {
        return TrialStream(trial_seed(master_seed, n_ue, trial));
    }
}

#endif
