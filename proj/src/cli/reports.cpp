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

#include "crpla/cli/reports.hpp"
#include "crpla/cli/sweep.hpp"
#include "crpla/config.hpp"
#include "crpla/specfun.hpp"

#include <cmath>

namespace crpla::cli
{

using nlohmann::json;

namespace
{

// JSON has no infinities; an empty cube volume is reported as null.
json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

void note_boundary(const chsec::ChannelGeometry &g, const char *where, std::vector<std::string> *warnings)
{
    if (warnings && g.boundary_warning)
        warnings->push_back(std::string(where) + ": acceptance radius " + format_number(g.radius) +
                            " exceeds 10% of the channel range; boundary effects are not modeled");
}

} // namespace

json to_json(const SecurityReport &r)
{
    return {{"mechanism", std::string(to_string(r.mechanism))},
            {"alpha_used", r.alpha_used},
            {"pilot_count_used", r.pilot_count_used},
            {"h_min_used", r.h_min_used},
            {"b_ch", r.b_ch},
            {"b_key", r.b_key},
            {"b_tot", r.b_tot()}};
}

json to_json(const chsec::ChannelGeometry &g)
{
    return {{"tau", g.tau},
            {"sigma_h_sq", g.sigma_h_sq},
            {"radius", g.radius},
            {"log2_v_sphere", finite_or_null(g.log2_v_sphere)},
            {"log2_v_cube", finite_or_null(g.log2_v_cube)},
            {"log2_p_succ", g.log2_p_succ},
            {"b_ch", g.b_ch},
            {"boundary_warning", g.boundary_warning}};
}

json to_json(const cdsec::RateReport &r)
{
    return {{"i_xy", r.i_xy}, {"i_xz", r.i_xz},       {"dispersion", r.dispersion}, {"rate", r.rate},
            {"b_key_1", r.b_key_1}, {"b_key_2", r.b_key_2}, {"b_key", r.b_key}};
}

json analyze_report(const SystemParams &params, const hybrid::HybridOptions &options,
                    std::vector<std::string> *warnings)
{
    validate(params);
    json doc;
    doc["params"] = params_to_json(params);

    if (params.pilot_count >= 1)
    {
        const auto d = hybrid::hybrid_detail(params, options);
        note_boundary(d.geometry, "hybrid", warnings);
        doc["hybrid"] = {{"p_fa_ch", d.p_fa_ch},
                         {"p_fa_cd", d.p_fa_cd},
                         {"geometry", to_json(d.geometry)},
                         {"rates", to_json(d.rates)},
                         {"security", to_json(d.report)}};
    }
    else
    {
        doc["hybrid"] = nullptr;
        if (warnings)
            warnings->push_back("hybrid: no pilots configured, only the baselines are reported");
    }

    const auto ch_geometry = hybrid::baseline_ch_geometry(params, options);
    note_boundary(ch_geometry, "baseline_ch", warnings);
    doc["baseline_ch"] = {{"geometry", to_json(ch_geometry)}, {"security", to_json(hybrid::baseline_ch(params, options))}};

    SystemParams cd = params;
    cd.pilot_count = 0;
    cd.h_min = cd.h_max;
    doc["baseline_cd"] = {{"rates", to_json(cdsec::b_key_cd(cd, cd.p_fa))},
                          {"security", to_json(hybrid::baseline_cd(params))}};
    return doc;
}

json optimize_report(const SystemParams &params, const SecurityReport &best, const hybrid::OptimizationGrid &grid)
{
    return {{"params", params_to_json(params)},
            {"grid", {{"pilot_counts", grid.pilot_counts}, {"h_min_values", grid.h_min_values}}},
            {"optimum", to_json(best)}};
}

std::string format_grid_csv(const std::vector<hybrid::GridCell> &cells)
{
    std::string out = "pilot_count,alpha,h_min,b_ch,b_key,b_tot\n";
    for (const auto &c : cells)
        out += std::to_string(c.pilot_count) + "," + format_number(c.report.alpha_used) + "," +
               format_number(c.h_min) + "," + format_number(c.report.b_ch) + "," + format_number(c.report.b_key) +
               "," + format_number(c.report.b_tot()) + "\n";
    return out;
}

std::string_view to_string(CheckStatus s) noexcept
{
    switch (s)
    {
    case CheckStatus::Pass: return "PASS";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::Insufficient: return "INSUFFICIENT";
    case CheckStatus::Info: return "INFO";
    }
    return "?";
}

std::vector<SimulationCheck> run_simulation(const SystemParams &params, const SimulationOptions &options)
{
    validate(params);
    if (options.trials == 0)
        throw Error(ErrorKind::DomainError, "trials must be positive");

    const double tau = chsec::threshold(params.p_fa, params.frames, options.threshold);
    const double f = static_cast<double>(params.frames);
    std::vector<SimulationCheck> checks;

    auto batch_check = [](std::string name, double reference, const mc::TrialBatch &b, CheckStatus status) {
        SimulationCheck c;
        c.name = std::move(name);
        c.reference = reference;
        c.empirical = b.estimate;
        c.low = b.wilson_3sigma_low;
        c.high = b.wilson_3sigma_high;
        c.trials = b.trials;
        c.successes = b.successes;
        c.status = status;
        return c;
    };

    const auto fa = mc::measure_false_alarm(params, tau, options.trials, options.seed, options.jobs);
    const double fa_exact = specfun::chi_square_sf(std::max(0.0, std::sqrt(2.0 * f) * tau + f), params.frames);
    checks.push_back(batch_check("false_alarm", fa_exact, fa, fa.contains(fa_exact) ? CheckStatus::Pass : CheckStatus::Fail));
    checks.push_back(batch_check("false_alarm_gaussian", specfun::q_function(tau), fa, CheckStatus::Info));

    const auto attack = mc::measure_attack_success(params, tau, options.trials, options.seed, options.jobs);
    CheckStatus attack_status = attack.batch.contains(attack.analytic_p_succ) ? CheckStatus::Pass : CheckStatus::Fail;
    if (attack.insufficient_resolution)
        attack_status = CheckStatus::Insufficient;
    checks.push_back(batch_check("attack_success", attack.analytic_p_succ, attack.batch, attack_status));

    const double sigma_sq = chsec::estimator_variance(params);
    const auto moments = mc::simulate_pilot_estimation(params.h_max, params.lambda_b, params.pilot_count,
                                                       options.trials, options.seed, options.jobs);
    const double n = static_cast<double>(options.trials);

    SimulationCheck mean;
    mean.name = "estimator_mean";
    mean.reference = params.h_max;
    mean.empirical = moments.mean;
    mean.low = params.h_max - 3.0 * std::sqrt(sigma_sq / n);
    mean.high = params.h_max + 3.0 * std::sqrt(sigma_sq / n);
    mean.trials = options.trials;
    mean.status = (moments.mean >= mean.low && moments.mean <= mean.high) ? CheckStatus::Pass : CheckStatus::Fail;
    checks.push_back(mean);

    SimulationCheck var;
    var.name = "estimator_variance";
    var.reference = sigma_sq;
    var.empirical = moments.variance;
    if (options.trials > 1)
    {
        // (N-1) s^2 / sigma^2 ~ chi^2_{N-1}: mean N-1, standard deviation sqrt(2(N-1)).
        const double band = 3.0 * std::sqrt(2.0 / (n - 1.0));
        var.low = sigma_sq * (1.0 - band);
        var.high = sigma_sq * (1.0 + band);
        var.status = (moments.variance >= var.low && moments.variance <= var.high) ? CheckStatus::Pass
                                                                                   : CheckStatus::Fail;
    }
    var.trials = options.trials;
    checks.push_back(var);
    return checks;
}

bool any_failed(const std::vector<SimulationCheck> &checks)
{
    for (const auto &c : checks)
        if (c.status == CheckStatus::Fail)
            return true;
    return false;
}

std::string format_simulation_table(const std::vector<SimulationCheck> &checks)
{
    std::string out = "check,reference,empirical,band_low,band_high,trials,successes,status\n";
    for (const auto &c : checks)
        out += c.name + "," + format_number(c.reference) + "," + format_number(c.empirical) + "," +
               format_number(c.low) + "," + format_number(c.high) + "," + std::to_string(c.trials) + "," +
               std::to_string(c.successes) + "," + std::string(to_string(c.status)) + "\n";
    return out;
}

} // namespace crpla::cli
