// SPDX-License-Identifier: Apache-2.0
//
// crpla - security analysis for hybrid challenge-response physical layer authentication
// Copyright (C) 2026 The crpla authors
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

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace crpla::mc
{

using Philox4x32Counter = std::array<std::uint32_t, 4>;
using Philox4x32Key = std::array<std::uint32_t, 2>;

/// Philox4x32-10 block function (Salmon et al., SC'11), the counter-based
/// generator behind every Monte Carlo draw in this library.
constexpr Philox4x32Counter philox4x32_10(Philox4x32Counter ctr, Philox4x32Key key)
{
    constexpr std::uint32_t m0 = 0xD2511F53u;
    constexpr std::uint32_t m1 = 0xCD9E8D57u;
    constexpr std::uint32_t w0 = 0x9E3779B9u;
    constexpr std::uint32_t w1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round)
    {
        if (round > 0)
        {
            key[0] += w0;
            key[1] += w1;
        }
        const std::uint64_t p0 = static_cast<std::uint64_t>(m0) * ctr[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(m1) * ctr[2];
        ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
               static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
    }
    return ctr;
}

/*!
Independent random stream for one (seed, domain, trial) triple.

The 64-bit seed is the Philox key; the counter holds the trial index (64
bits), a domain tag separating the different experiments, and a running
block index. Any trial's draws can therefore be reproduced without touching
other trials, which makes parallel runs bit-identical to serial ones.
*/
class TrialStream
{
public:
    TrialStream(std::uint64_t seed, std::uint32_t domain, std::uint64_t trial)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          trial_lo_(static_cast<std::uint32_t>(trial)), trial_hi_(static_cast<std::uint32_t>(trial >> 32)),
          domain_(domain) {}

    std::uint32_t next_u32()
    {
        if (used_ == 4)
        {
            buffer_ = philox4x32_10({trial_lo_, trial_hi_, domain_, block_++}, key_);
            used_ = 0;
        }
        return buffer_[used_++];
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform()
    {
        const std::uint64_t hi = next_u32();
        const std::uint64_t lo = next_u32();
        return static_cast<double>(((hi << 32) | lo) >> 11) * 0x1.0p-53;
    }

    /// Standard normal by Box-Muller; the second variate is cached.
    double normal()
    {
        if (has_spare_)
        {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform(); // (0, 1]
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double phase = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(phase);
        has_spare_ = true;
        return r * std::cos(phase);
    }

private:
    Philox4x32Key key_;
    std::uint32_t trial_lo_;
    std::uint32_t trial_hi_;
    std::uint32_t domain_;
    std::uint32_t block_ = 0;
    Philox4x32Counter buffer_{};
    int used_ = 4;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace crpla::mc
