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

#include "crpla/hybrid.hpp"
#include "crpla/parallel.hpp"

#include <cmath>
#include <string>

namespace crpla::hybrid
{

HybridDetail hybrid_detail(const SystemParams &params, const HybridOptions &options)
{
    validate(params);
    if (params.pilot_count < 1)
        throw Error(ErrorKind::InvalidPilotCount, "the hybrid mechanism needs at least one pilot per frame");
    if (!(options.fa_split > 0.0 && options.fa_split < 1.0))
        throw Error(ErrorKind::InvalidProbability, "false-alarm split must lie strictly inside (0, 1)");

    HybridDetail d;
    const bool has_codeword = params.n_data() > 0;
    d.p_fa_ch = has_codeword ? options.fa_split * params.p_fa : params.p_fa;
    d.p_fa_cd = has_codeword ? (1.0 - options.fa_split) * params.p_fa : 0.0;

    d.geometry = chsec::equivalent_key_bits(params, d.p_fa_ch, options.threshold);
    if (has_codeword)
        d.rates = cdsec::b_key_hybrid(params, d.p_fa_cd, options.quadrature);
    else
        d.rates.i_xz = cdsec::eavesdropper_info(params.lambda_t);

    d.report.mechanism = Mechanism::Hybrid;
    d.report.b_ch = d.geometry.b_ch;
    d.report.b_key = d.rates.b_key;
    d.report.alpha_used = params.alpha();
    d.report.h_min_used = params.h_min;
    d.report.pilot_count_used = params.pilot_count;
    return d;
}

SecurityReport hybrid_bits(const SystemParams &params, const HybridOptions &options)
{
    return hybrid_detail(params, options).report;
}

namespace
{

SystemParams channel_only(const SystemParams &params)
{
    SystemParams p = params;
    p.pilot_count = p.n;
    p.h_min = 0.0;
    return p;
}

} // namespace

chsec::ChannelGeometry baseline_ch_geometry(const SystemParams &params, const HybridOptions &options)
{
    const SystemParams p = channel_only(validate(params));
    return chsec::equivalent_key_bits(p, p.p_fa, options.threshold);
}

SecurityReport baseline_ch(const SystemParams &params, const HybridOptions &options)
{
    const auto g = baseline_ch_geometry(params, options);
    SecurityReport r;
    r.mechanism = Mechanism::Channel;
    r.b_ch = g.b_ch;
    r.b_key = 0.0;
    r.alpha_used = 1.0;
    r.h_min_used = 0.0;
    r.pilot_count_used = params.n;
    return r;
}

SecurityReport baseline_cd(const SystemParams &params)
{
    validate(params);
    SystemParams p = params;
    p.pilot_count = 0;
    p.h_min = p.h_max;

    SecurityReport r;
    r.mechanism = Mechanism::Coding;
    r.b_ch = 0.0;
    r.b_key = cdsec::b_key_cd(p, p.p_fa).b_key;
    r.alpha_used = 0.0;
    r.h_min_used = p.h_max;
    r.pilot_count_used = 0;
    return r;
}

OptimizationGrid default_grid(const SystemParams &params)
{
    OptimizationGrid g;
    for (int pc = 1; pc <= params.n; ++pc)
        g.pilot_counts.push_back(pc);
    constexpr int points = 101;
    for (int i = 0; i < points; ++i)
        g.h_min_values.push_back(params.h_max * static_cast<double>(i) / static_cast<double>(points - 1));
    return g;
}

void validate_grid(const SystemParams &params, const OptimizationGrid &grid)
{
    if (grid.pilot_counts.empty() || grid.h_min_values.empty())
        throw Error(ErrorKind::InvalidRange, "optimization grid must be non-empty");
    for (int pc : grid.pilot_counts)
        if (pc < 1 || pc > params.n)
            throw Error(ErrorKind::InvalidPilotCount, "grid pilot count " + std::to_string(pc) + " outside 1..n");
    for (double h : grid.h_min_values)
        if (!(h >= 0.0 && h <= params.h_max))
            throw Error(ErrorKind::InvalidRange, "grid h_min " + std::to_string(h) + " outside [0, h_max]");
}

std::vector<GridCell> evaluate_grid(const SystemParams &params, const OptimizationGrid &grid,
                                    const HybridOptions &options, unsigned jobs)
{
    validate(params);
    validate_grid(params, grid);

    const std::size_t n_h = grid.h_min_values.size();
    std::vector<GridCell> cells(grid.pilot_counts.size() * n_h);
    parallel_for(cells.size(), jobs, [&](std::size_t i) {
        SystemParams p = params;
        p.pilot_count = grid.pilot_counts[i / n_h];
        p.h_min = grid.h_min_values[i % n_h];
        cells[i] = {p.pilot_count, p.h_min, hybrid_bits(p, options)};
    });
    return cells;
}

bool better(const SecurityReport &a, const SecurityReport &b)
{
    if (a.b_tot() != b.b_tot())
        return a.b_tot() > b.b_tot();
    if (a.pilot_count_used != b.pilot_count_used)
        return a.pilot_count_used < b.pilot_count_used;
    return a.h_min_used > b.h_min_used;
}

SecurityReport best_of(const std::vector<GridCell> &cells)
{
    if (cells.empty())
        throw Error(ErrorKind::InvalidRange, "no grid cells to choose from");
    const GridCell *best = &cells.front();
    for (const auto &c : cells)
        if (better(c.report, best->report))
            best = &c;
    return best->report;
}

SecurityReport optimize(const SystemParams &params, const OptimizationGrid &grid, const HybridOptions &options,
                        unsigned jobs)
{
    return best_of(evaluate_grid(params, grid, options, jobs));
}

} // namespace crpla::hybrid
