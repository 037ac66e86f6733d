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

// crpla: command-line front end.
//
//   crpla analyze  --config point.json [--out report.json]
//   crpla sweep    --config sweep.json --out rows.csv
//   crpla simulate --config point.json [--trials N] [--seed S] [--out table.csv]
//   crpla optimize --config point.json [--grid-csv grid.csv] [--pilots 1,2] [--h-min-values 0.8,0.9]
//
// Exit status: 0 ok, 1 configuration/usage error, 2 numeric failure,
// 3 a simulate check FAILed.

#include "crpla/cli/reports.hpp"
#include "crpla/cli/sweep.hpp"
#include "crpla/config.hpp"
#include "crpla/parallel.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

namespace
{

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumeric = 2;
constexpr int kExitValidationFail = 3;

int exit_code_for(crpla::ErrorKind kind)
{
    using crpla::ErrorKind;
    switch (kind)
    {
    case ErrorKind::DomainError:
    case ErrorKind::ConvergenceError:
    case ErrorKind::DegenerateInterval:
    case ErrorKind::NumericError:
    case ErrorKind::AllPilots:
        return kExitNumeric;
    default:
        return kExitConfig;
    }
}

std::uint64_t default_seed()
{
    if (const char *env = std::getenv("CRPLA_SEED"))
    {
        try
        {
            std::size_t used = 0;
            const auto v = std::stoull(env, &used, 0);
            if (used == std::string(env).size())
                return v;
        }
        catch (const std::exception &)
        {
        }
        std::cerr << "warning: ignoring malformed CRPLA_SEED='" << env << "'\n";
    }
    return 1;
}

void emit(const std::string &text, const std::string &out_path)
{
    if (out_path.empty())
        std::cout << text;
    else
        crpla::cli::write_file_atomic(out_path, text);
}

void print_warnings(const std::vector<std::string> &warnings, bool quiet)
{
    if (quiet)
        return;
    for (const auto &w : warnings)
        std::cerr << "warning: " << w << "\n";
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Security analysis for hybrid challenge-response physical layer authentication"};
    app.require_subcommand(1);

    unsigned jobs = crpla::default_jobs();
    bool quiet = false;
    bool exact_threshold = false;
    app.add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    app.add_flag("--quiet", quiet, "suppress diagnostics on stderr");
    app.add_flag("--exact-threshold", exact_threshold, "use the exact chi-square threshold instead of Q^-1(p)");

    std::string config;
    std::string out;
    std::uint64_t trials = 1000000;
    std::uint64_t seed = default_seed();
    std::string grid_csv;
    std::vector<int> pilots;
    std::vector<double> h_min_values;

    auto *analyze = app.add_subcommand("analyze", "report all mechanisms at one operating point");
    analyze->add_option("--config", config, "parameter JSON")->required();
    analyze->add_option("--out", out, "write the JSON report here instead of stdout");

    auto *sweep = app.add_subcommand("sweep", "evaluate mechanisms along one swept parameter");
    sweep->add_option("--config", config, "sweep spec JSON")->required();
    sweep->add_option("--out", out, "CSV output path")->required();

    auto *simulate = app.add_subcommand("simulate", "Monte Carlo validation of the analytic model");
    simulate->add_option("--config", config, "parameter JSON")->required();
    simulate->add_option("--trials", trials, "trials per check")->check(CLI::PositiveNumber);
    simulate->add_option("--seed", seed, "64-bit seed (default: $CRPLA_SEED or 1)");
    simulate->add_option("--out", out, "write the table here instead of stdout");

    auto *optimize = app.add_subcommand("optimize", "grid search over pilot count and h_min");
    optimize->add_option("--config", config, "parameter JSON")->required();
    optimize->add_option("--out", out, "write the JSON report here instead of stdout");
    optimize->add_option("--grid-csv", grid_csv, "also write every grid cell as CSV");
    optimize->add_option("--pilots", pilots, "pilot counts to search (default 1..n)")->delimiter(',');
    optimize->add_option("--h-min-values", h_min_values, "h_min values to search (default 101 points)")
        ->delimiter(',');

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    crpla::hybrid::HybridOptions options;
    if (exact_threshold)
        options.threshold = crpla::chsec::ThresholdMode::ExactChiSquare;

    try
    {
        if (*analyze)
        {
            const auto params = crpla::params_from_json(crpla::load_json_file(config));
            std::vector<std::string> warnings;
            const auto report = crpla::cli::analyze_report(params, options, &warnings);
            print_warnings(warnings, quiet);
            emit(report.dump(2) + "\n", out);
        }
        else if (*sweep)
        {
            const auto spec = crpla::cli::sweep_spec_from_json(crpla::load_json_file(config));
            const auto rows = crpla::cli::run_sweep(spec, options, jobs);
            crpla::cli::write_file_atomic(out, crpla::cli::format_sweep_csv(spec, rows));
            if (!quiet)
                std::cerr << "wrote " << rows.size() << " rows to " << out << "\n";
        }
        else if (*simulate)
        {
            const auto params = crpla::params_from_json(crpla::load_json_file(config));
            crpla::cli::SimulationOptions sim;
            sim.trials = trials;
            sim.seed = seed;
            sim.jobs = jobs;
            sim.threshold = options.threshold;
            const auto checks = crpla::cli::run_simulation(params, sim);
            std::vector<std::string> warnings;
            for (const auto &c : checks)
                if (c.status == crpla::cli::CheckStatus::Insufficient)
                    warnings.push_back(c.name + ": no success observed and fewer than 10 expected; "
                                                "increase --trials or reduce F to resolve it");
            print_warnings(warnings, quiet);
            emit(crpla::cli::format_simulation_table(checks), out);
            if (crpla::cli::any_failed(checks))
                return kExitValidationFail;
        }
        else if (*optimize)
        {
            const auto params = crpla::params_from_json(crpla::load_json_file(config));
            auto grid = crpla::hybrid::default_grid(params);
            if (!pilots.empty())
                grid.pilot_counts = pilots;
            if (!h_min_values.empty())
                grid.h_min_values = h_min_values;
            const auto cells = crpla::hybrid::evaluate_grid(params, grid, options, jobs);
            const auto best = crpla::hybrid::best_of(cells);
            emit(crpla::cli::optimize_report(params, best, grid).dump(2) + "\n", out);
            if (!grid_csv.empty())
                crpla::cli::write_file_atomic(grid_csv, crpla::cli::format_grid_csv(cells));
        }
    }
    catch (const crpla::Error &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitOk;
}
