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

#include "crpla/cdsec.hpp"
#include "crpla/chsec.hpp"
#include "crpla/core.hpp"

#include <vector>

namespace crpla::hybrid
{

struct HybridOptions
{
    /// Share of the overall false-alarm budget given to the channel check;
    /// the decoding check receives the rest.
    double fa_split = 0.5;
    chsec::ThresholdMode threshold = chsec::ThresholdMode::Asymptotic;
    specfun::QuadratureSpec quadrature{};
};

struct HybridDetail
{
    double p_fa_ch = 0.0;
    double p_fa_cd = 0.0;
    chsec::ChannelGeometry geometry;
    cdsec::RateReport rates;
    SecurityReport report;
};

/*!
Evaluates the hybrid mechanism at the pilot count and h_min in `params`.

The false-alarm budget is split between the channel test and the decoding
check. With pilot_count == n there is no codeword and no decoding check, so
the whole budget goes to the channel test and the result coincides with the
channel-only mechanism at the same h_min. Requires 1 <= pilot_count <= n.
*/
HybridDetail hybrid_detail(const SystemParams &params, const HybridOptions &options = {});
SecurityReport hybrid_bits(const SystemParams &params, const HybridOptions &options = {});

/// Channel-only baseline: all pilots, h_min = 0, full p_FA on the channel test.
chsec::ChannelGeometry baseline_ch_geometry(const SystemParams &params, const HybridOptions &options = {});
SecurityReport baseline_ch(const SystemParams &params, const HybridOptions &options = {});

/// Coding-only baseline: no pilots, channel fixed at h_max, full p_FA as the
/// decoding error target.
SecurityReport baseline_cd(const SystemParams &params);

struct OptimizationGrid
{
    std::vector<int> pilot_counts;
    std::vector<double> h_min_values;
};

/// Pilot counts 1..n and 101 uniform h_min values spanning [0, h_max].
OptimizationGrid default_grid(const SystemParams &params);

/// Throws InvalidRange / InvalidPilotCount for empty or out-of-range grids.
void validate_grid(const SystemParams &params, const OptimizationGrid &grid);

struct GridCell
{
    int pilot_count = 0;
    double h_min = 0.0;
    SecurityReport report;
};

/// Evaluates every (pilot count, h_min) cell, pilot-major in grid order.
std::vector<GridCell> evaluate_grid(const SystemParams &params, const OptimizationGrid &grid,
                                    const HybridOptions &options = {}, unsigned jobs = 1);

/// Strict preference used by the optimizer: larger b_tot, then fewer pilots,
/// then larger h_min. Independent of evaluation order.
bool better(const SecurityReport &a, const SecurityReport &b);

SecurityReport best_of(const std::vector<GridCell> &cells);

SecurityReport optimize(const SystemParams &params, const OptimizationGrid &grid,
                        const HybridOptions &options = {}, unsigned jobs = 1);

} // namespace crpla::hybrid
