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

#include "crpla/core.hpp"

#include <cmath>
#include <string>

namespace crpla
{

std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind)
    {
    case ErrorKind::InvalidPilotCount: return "InvalidPilotCount";
    case ErrorKind::InvalidRange: return "InvalidRange";
    case ErrorKind::InvalidProbability: return "InvalidProbability";
    case ErrorKind::NonPositiveSnr: return "NonPositiveSnr";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::ConvergenceError: return "ConvergenceError";
    case ErrorKind::DegenerateInterval: return "DegenerateInterval";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::AllPilots: return "AllPilots";
    case ErrorKind::NumericError: return "NumericError";
    case ErrorKind::ConfigParseError: return "ConfigParseError";
    }
    return "Unknown";
}

std::string_view to_string(Mechanism m) noexcept
{
    switch (m)
    {
    case Mechanism::Channel: return "CH";
    case Mechanism::Coding: return "CD";
    case Mechanism::Hybrid: return "HYBRID";
    }
    return "?";
}

int pilot_count_from_alpha(int n, double alpha)
{
    if (n < 1)
        throw Error(ErrorKind::InvalidRange, "n must be a positive integer");
    if (!std::isfinite(alpha) || alpha < 0.0 || alpha > 1.0)
        throw Error(ErrorKind::InvalidPilotCount, "alpha must lie in [0, 1], got " + std::to_string(alpha));

    const double pilots = alpha * static_cast<double>(n);
    const double rounded = std::round(pilots);
    if (std::abs(pilots - rounded) > 1e-9 * static_cast<double>(n))
        throw Error(ErrorKind::InvalidPilotCount,
                    "alpha * n = " + std::to_string(pilots) + " is not an integer pilot count");
    return static_cast<int>(rounded);
}

const SystemParams &validate(const SystemParams &p)
{
    if (p.n < 1)
        throw Error(ErrorKind::InvalidRange, "n must be positive");
    if (p.frames < 1)
        throw Error(ErrorKind::InvalidRange, "F must be positive");
    if (p.pilot_count < 0 || p.pilot_count > p.n)
        throw Error(ErrorKind::InvalidPilotCount, "pilot count must lie in [0, n]");
    if (p.message_bits < 0)
        throw Error(ErrorKind::InvalidRange, "b_M must be non-negative");
    if (!(p.p_fa > 0.0 && p.p_fa < 1.0))
        throw Error(ErrorKind::InvalidProbability, "p_FA must lie strictly inside (0, 1)");
    if (!(p.lambda_b > 0.0) || !std::isfinite(p.lambda_b))
        throw Error(ErrorKind::NonPositiveSnr, "lambda_B must be positive and finite");
    if (!(p.lambda_t > 0.0) || !std::isfinite(p.lambda_t))
        throw Error(ErrorKind::NonPositiveSnr, "lambda_T must be positive and finite");
    if (!std::isfinite(p.h_min) || !std::isfinite(p.h_max) || p.h_min < 0.0 || p.h_max < 0.0)
        throw Error(ErrorKind::InvalidRange, "channel amplitude bounds must be finite and non-negative");
    if (p.h_min > p.h_max)
        throw Error(ErrorKind::InvalidRange, "h_min must not exceed h_max");
    return p;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

} // namespace crpla
