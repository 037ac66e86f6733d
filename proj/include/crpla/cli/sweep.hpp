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

#include "crpla/hybrid.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace crpla::cli
{

enum class SweepVariable
{
    HMin,        // "h_min"
    LambdaRatio, // "lambda_ratio": lambda_T / lambda_B
    LambdaBdB,   // "lambda_B_dB": the ratio lambda_T / lambda_B is held fixed
    Frames,      // "F"
    Alpha,       // "alpha"
};

enum class SweepMechanism
{
    Channel,   // "CH"
    Coding,    // "CD"
    Hybrid,    // "HYBRID" at the fixed alpha and h_min
    HybridOpt, // "HYBRID_OPT": optimized over the grid axes that are not swept
};

std::string_view to_string(SweepVariable v) noexcept;
std::string_view to_string(SweepMechanism m) noexcept;

struct SeriesSpec
{
    std::string label;
    nlohmann::json overrides; // merged into the fixed parameter document
};

/*!
Sweep specification document:

    {
      "fixed":      { <parameter document> },
      "sweep":      { "variable": "h_min",
                      "values": [ ... ]                       // or
                      "range": { "start": 0, "stop": 1, "count": 101 } },
      "mechanisms": [ "CH", "CD", "HYBRID", "HYBRID_OPT" ],
      "series":     [ { "label": "...", "set": { <parameter overrides> } } ],   // optional
      "grid":       { "pilot_counts": [ ... ], "h_min_points": 101 }           // optional
    }

Each sweep point is produced by writing the swept value into the parameter
document and parsing it, so a single-value sweep reproduces exactly what the
same document gives to `analyze`.
*/
struct SweepSpec
{
    SweepVariable variable = SweepVariable::HMin;
    std::vector<double> values;
    nlohmann::json fixed;
    std::vector<SweepMechanism> mechanisms;
    std::vector<SeriesSpec> series;
    std::optional<std::vector<int>> grid_pilot_counts;
    std::optional<int> grid_h_min_points;
};

SweepSpec sweep_spec_from_json(const nlohmann::json &doc);

/// Parameter document for one (series, value) point.
nlohmann::json point_document(const SweepSpec &spec, const SeriesSpec *series, double value);

/// Grid used by HYBRID_OPT at one sweep point.
hybrid::OptimizationGrid point_grid(const SweepSpec &spec, const SystemParams &params);

struct SweepRow
{
    std::string series;
    double value = 0.0;
    SweepMechanism mechanism = SweepMechanism::Hybrid;
    SecurityReport report;
};

/// Rows ordered series-major, then by value, then by mechanism order.
std::vector<SweepRow> run_sweep(const SweepSpec &spec, const hybrid::HybridOptions &options, unsigned jobs);

/// CSV with columns swept_var,value,mechanism,alpha_used,h_min_used,b_ch,b_key,b_tot,
/// preceded by a `series` column when the spec defines series.
std::string format_sweep_csv(const SweepSpec &spec, const std::vector<SweepRow> &rows);

/// Fixed numeric format for all tabular output: 12 significant digits.
std::string format_number(double v);

/// Writes `content` to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path &path, const std::string &content);

} // namespace crpla::cli
