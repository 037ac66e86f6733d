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
#include "crpla/mc.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace crpla::cli
{

nlohmann::json to_json(const SecurityReport &r);
nlohmann::json to_json(const chsec::ChannelGeometry &g);
nlohmann::json to_json(const cdsec::RateReport &r);

/// Structured report for one operating point: the hybrid mechanism at the
/// given pilot count and h_min (when it has pilots) plus both baselines.
/// Boundary-assumption diagnostics are collected in `warnings`.
nlohmann::json analyze_report(const SystemParams &params, const hybrid::HybridOptions &options,
                              std::vector<std::string> *warnings = nullptr);

nlohmann::json optimize_report(const SystemParams &params, const SecurityReport &best,
                               const hybrid::OptimizationGrid &grid);

/// pilot_count,alpha,h_min,b_ch,b_key,b_tot, one row per cell.
std::string format_grid_csv(const std::vector<hybrid::GridCell> &cells);

enum class CheckStatus
{
    Pass,
    Fail,
    Insufficient, // attack run saw no success where fewer than 10 were expected
    Info,         // reported for reference, not judged
};

std::string_view to_string(CheckStatus s) noexcept;

struct SimulationCheck
{
    std::string name;
    double reference = 0.0;
    double empirical = 0.0;
    double low = 0.0;  // acceptance band on the empirical value
    double high = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    CheckStatus status = CheckStatus::Info;
};

struct SimulationOptions
{
    std::uint64_t trials = 1000000;
    std::uint64_t seed = 1;
    unsigned jobs = 1;
    chsec::ThresholdMode threshold = chsec::ThresholdMode::Asymptotic;
};

/*!
Analytic-vs-empirical validation at the configured operating point, using
the full p_FA on the channel test:

  false_alarm          rejection rate vs the exact chi-square value, Wilson 3 sigma
  false_alarm_gaussian the same rate next to the asymptotic Q(tau), Info only
  attack_success       injection success rate vs 2^log2_p_succ, Wilson 3 sigma
  estimator_mean       pilot-estimate mean vs h_max, 3 sigma band
  estimator_variance   pilot-estimate variance vs 1/(lambda_B pilots), chi-square 3 sigma band
*/
std::vector<SimulationCheck> run_simulation(const SystemParams &params, const SimulationOptions &options);

bool any_failed(const std::vector<SimulationCheck> &checks);

std::string format_simulation_table(const std::vector<SimulationCheck> &checks);

} // namespace crpla::cli
