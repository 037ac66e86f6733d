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

#include "crpla/error.hpp"

#include <cstdint>
#include <string_view>

namespace crpla
{

/*!
Scenario description shared by every analysis module.

A message is split into `frames` frames of `n` symbols each; `pilot_count`
of them are pilots and the remaining `n - pilot_count` carry the wiretap
codeword. The pilot fraction is never stored as a float: `alpha()` is
derived from the integer pilot count so that the pilot count is always an
integer.

SNRs are linear. `lambda_b` is the noise-normalized legitimate SNR scale
(1 / sigma_B^2), `lambda_t` the attacker SNR. The controllable channel
amplitude is confined to [h_min, h_max].
*/
struct SystemParams
{
    int n = 10;
    int frames = 100;
    int pilot_count = 1;
    std::int64_t message_bits = 600;
    double p_fa = 1e-7;
    double lambda_b = 1e5;
    double lambda_t = 3e4;
    double h_min = 0.0;
    double h_max = 1.0;

    double alpha() const { return static_cast<double>(pilot_count) / static_cast<double>(n); }
    int n_data() const { return n - pilot_count; }
    double edge() const { return h_max - h_min; }

    bool operator==(const SystemParams &) const = default;
};

/// Data symbols per frame, (1 - alpha) * n.
inline int n_data(const SystemParams &params) { return params.n_data(); }

/// Converts a pilot fraction into a pilot count; throws InvalidPilotCount
/// unless alpha is in [0, 1] and alpha * n is an integer.
int pilot_count_from_alpha(int n, double alpha);

/// Returns `params` unchanged when every invariant holds, throws otherwise.
const SystemParams &validate(const SystemParams &params);

double db_to_linear(double db);

enum class Mechanism
{
    Channel, // CH
    Coding,  // CD
    Hybrid,  // HYBRID
};

std::string_view to_string(Mechanism m) noexcept;

/// Equivalent secret-key length delivered by one authentication mechanism.
struct SecurityReport
{
    Mechanism mechanism = Mechanism::Hybrid;
    double b_ch = 0.0;
    double b_key = 0.0;
    double alpha_used = 0.0;
    double h_min_used = 0.0;
    int pilot_count_used = 0;

    double b_tot() const { return b_ch + b_key; }
};

} // namespace crpla
