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

#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace crpla;
using namespace crpla::cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace
{

json fixed_doc()
{
    return json::parse(R"({"n": 10, "F": 100, "pilot_count": 1, "b_M": 600, "p_FA": 1e-7,
                           "lambda_B_dB": 50, "lambda_T_over_lambda_B": 0.3, "h_min": 0.9, "h_max": 1.0})");
}

json sweep_doc()
{
    json doc;
    doc["fixed"] = fixed_doc();
    doc["sweep"] = {{"variable", "h_min"}, {"values", {0.0, 0.5, 0.9}}};
    doc["mechanisms"] = {"CH", "CD", "HYBRID"};
    return doc;
}

ErrorKind kind_of(auto &&fn)
{
    try
    {
        fn();
    }
    catch (const Error &e)
    {
        return e.kind();
    }
    FAIL("no crpla::Error thrown");
    return ErrorKind::NumericError;
}

struct Scratch
{
    fs::path dir;
    Scratch()
    {
        dir = fs::temp_directory_path() / ("crpla_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
    fs::path write(const std::string &name, const std::string &content) const
    {
        std::ofstream(dir / name) << content;
        return dir / name;
    }
};

std::string slurp(const fs::path &p)
{
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

int run(const std::string &args, const fs::path &stdout_path = "/dev/null")
{
    const std::string cmd = std::string(CRPLA_BINARY) + " " + args + " > " + stdout_path.string() + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

} // namespace

TEST_CASE("sweep spec: values, ranges and rejections")
{
    const auto spec = sweep_spec_from_json(sweep_doc());
    CHECK(spec.variable == SweepVariable::HMin);
    CHECK(spec.values == std::vector<double>{0.0, 0.5, 0.9});
    REQUIRE(spec.mechanisms.size() == 3);
    CHECK(spec.mechanisms[2] == SweepMechanism::Hybrid);
    CHECK(spec.series.empty());

    auto ranged = sweep_doc();
    ranged["sweep"].erase("values");
    ranged["sweep"]["range"] = {{"start", 0.0}, {"stop", 1.0}, {"count", 101}};
    const auto r = sweep_spec_from_json(ranged);
    REQUIRE(r.values.size() == 101);
    CHECK(r.values.front() == 0.0);
    CHECK(r.values[50] == 0.5);
    CHECK(r.values.back() == 1.0);

    auto broken = [](auto mutate) {
        auto doc = sweep_doc();
        mutate(doc);
        return kind_of([&] { sweep_spec_from_json(doc); });
    };
    CHECK(broken([](json &d) { d.erase("fixed"); }) == ErrorKind::ConfigParseError);
    CHECK(broken([](json &d) { d["extra"] = 1; }) == ErrorKind::ConfigParseError);
    CHECK(broken([](json &d) { d["sweep"]["variable"] = "h_max"; }) == ErrorKind::ConfigParseError);
    CHECK(broken([](json &d) { d["sweep"]["range"] = {{"start", 0}, {"stop", 1}, {"count", 3}}; }) ==
          ErrorKind::ConfigParseError);
    CHECK(broken([](json &d) { d["sweep"]["values"] = json::array(); }) == ErrorKind::ConfigParseError);
    CHECK(broken([](json &d) { d["mechanisms"] = {"CH", "XYZ"}; }) == ErrorKind::ConfigParseError);
    CHECK(broken([](json &d) { d["mechanisms"] = json::array(); }) == ErrorKind::ConfigParseError);
    CHECK(broken([](json &d) { d["series"] = {{{"set", json::object()}}}; }) == ErrorKind::ConfigParseError);
    // Bad points are caught while parsing, not mid-run.
    CHECK(broken([](json &d) { d["sweep"]["values"] = {0.5, 1.5}; }) == ErrorKind::InvalidRange);
    CHECK(broken([](json &d) {
              d["sweep"]["variable"] = "F";
              d["sweep"]["values"] = {10.5};
          }) == ErrorKind::ConfigParseError);
}

TEST_CASE("point documents and grids")
{
    auto doc = sweep_doc();
    doc["series"] = {{{"label", "20dB"}, {"set", {{"lambda_B_dB", 20}}}}};
    doc["sweep"] = {{"variable", "alpha"}, {"values", {0.3}}};
    const auto spec = sweep_spec_from_json(doc);
    const auto point = point_document(spec, &spec.series[0], 0.3);
    CHECK(point["lambda_B_dB"] == 20);
    CHECK(point["alpha"] == 0.3);
    CHECK_FALSE(point.contains("pilot_count"));
    const auto p = params_from_json(point);
    CHECK(p.pilot_count == 3);

    const auto g = point_grid(spec, p);
    CHECK(g.pilot_counts == std::vector<int>{3});
    CHECK(g.h_min_values.size() == 101);

    auto hdoc = sweep_doc();
    hdoc["grid"] = {{"pilot_counts", {1, 2}}, {"h_min_points", 5}};
    const auto hspec = sweep_spec_from_json(hdoc);
    const auto hp = params_from_json(point_document(hspec, nullptr, 0.5));
    const auto hg = point_grid(hspec, hp);
    CHECK(hg.pilot_counts == std::vector<int>{1, 2});
    CHECK(hg.h_min_values == std::vector<double>{0.5});

    auto fdoc = sweep_doc();
    fdoc["sweep"] = {{"variable", "F"}, {"values", {1, 50}}};
    fdoc["grid"] = {{"h_min_points", 5}};
    const auto fspec = sweep_spec_from_json(fdoc);
    const auto fpoint = point_document(fspec, nullptr, 50);
    CHECK(fpoint["F"].is_number_integer());
    const auto fg = point_grid(fspec, params_from_json(fpoint));
    CHECK(fg.h_min_values == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
}

TEST_CASE("a single-value sweep reproduces analyze")
{
    auto doc = sweep_doc();
    doc["sweep"]["values"] = {0.9};
    doc["mechanisms"] = {"HYBRID", "CH", "CD", "HYBRID_OPT"};
    const auto spec = sweep_spec_from_json(doc);
    const auto rows = run_sweep(spec, {}, 2);
    REQUIRE(rows.size() == 4);

    const auto report = analyze_report(params_from_json(fixed_doc()), {});
    CHECK(rows[0].report.b_tot() == report["hybrid"]["security"]["b_tot"].get<double>());
    CHECK(rows[1].report.b_tot() == report["baseline_ch"]["security"]["b_tot"].get<double>());
    CHECK(rows[2].report.b_tot() == report["baseline_cd"]["security"]["b_tot"].get<double>());
    // With h_min swept, the optimizer only chooses the pilot count.
    CHECK(rows[3].report.h_min_used == 0.9);
    CHECK(rows[3].report.b_tot() >= rows[0].report.b_tot());
}

TEST_CASE("sweep csv")
{
    const auto spec = sweep_spec_from_json(sweep_doc());
    const auto rows = run_sweep(spec, {}, 1);
    CHECK(rows.size() == 9);
    CHECK(rows[0].value == 0.0);
    CHECK(rows[0].mechanism == SweepMechanism::Channel);
    CHECK(rows[4].value == 0.5);
    CHECK(rows[4].mechanism == SweepMechanism::Coding);

    const auto csv = format_sweep_csv(spec, rows);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "swept_var,value,mechanism,alpha_used,h_min_used,b_ch,b_key,b_tot");
    int count = 0;
    while (std::getline(in, line))
    {
        ++count;
        CHECK(std::count(line.begin(), line.end(), ',') == 7);
        CHECK(line.rfind("h_min,", 0) == 0);
    }
    CHECK(count == 9);
    CHECK(run_sweep(spec, {}, 4).size() == rows.size());
    CHECK(format_sweep_csv(spec, run_sweep(spec, {}, 4)) == csv);

    auto with_series = sweep_doc();
    with_series["series"] = {{{"label", "a"}, {"set", json::object()}}, {{"label", "b"}, {"set", {{"F", 50}}}}};
    const auto sspec = sweep_spec_from_json(with_series);
    const auto srows = run_sweep(sspec, {}, 3);
    CHECK(srows.size() == 18);
    CHECK(srows[0].series == "a");
    CHECK(srows[17].series == "b");
    CHECK(format_sweep_csv(sspec, srows).rfind("series,swept_var,", 0) == 0);
}

TEST_CASE("number format")
{
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(0.0) == "0");
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(1620.82061234567) == "1620.82061235");
    CHECK(format_number(1e-7) == "1e-07");
}

TEST_CASE("simulation checks")
{
    auto doc = fixed_doc();
    doc["F"] = 2;
    doc["p_FA"] = 0.05;
    doc["b_M"] = 0;
    doc["lambda_B_dB"] = 40;
    doc["h_min"] = 0.5;
    doc["pilot_count"] = 10;
    const auto p = params_from_json(doc);
    SimulationOptions opt;
    opt.trials = 200000;
    const auto checks = run_simulation(p, opt);
    REQUIRE(checks.size() == 5);
    CHECK(checks[0].name == "false_alarm");
    CHECK(checks[1].status == CheckStatus::Info);
    CHECK(checks[2].name == "attack_success");
    CHECK(checks[2].reference == doctest::Approx(std::exp2(-chsec::equivalent_key_bits(p, 0.05).b_ch)).epsilon(1e-14));
    for (const auto &c : checks)
    {
        CHECK(c.trials == opt.trials);
        if (c.status != CheckStatus::Info)
            CHECK(c.status == CheckStatus::Pass);
        CHECK(c.low <= c.high);
    }
    CHECK_FALSE(any_failed(checks));

    opt.jobs = 4;
    CHECK(format_simulation_table(run_simulation(p, opt)) == format_simulation_table(checks));
    opt.trials = 0;
    CHECK_THROWS_AS(run_simulation(p, opt), Error);
}

TEST_CASE("grid csv")
{
    const auto p = params_from_json(fixed_doc());
    const auto cells = hybrid::evaluate_grid(p, hybrid::OptimizationGrid{{1, 2}, {0.0, 0.9}});
    const auto csv = format_grid_csv(cells);
    CHECK(csv.rfind("pilot_count,alpha,h_min,b_ch,b_key,b_tot\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
}

TEST_CASE("command line exit codes")
{
    const Scratch s;
    const auto good = (fs::path(CRPLA_CONFIG_DIR) / "fig2_point.json").string();
    CHECK(run("analyze --config " + good) == 0);
    CHECK(run("--help") == 0);
    CHECK(run("") == 1);
    CHECK(run("frobnicate") == 1);
    CHECK(run("analyze --config " + (s.dir / "missing.json").string()) == 1);
    CHECK(run("analyze --config " + s.write("broken.json", "{\"n\": 10,").string()) == 1);
    CHECK(run("analyze --config " + s.write("typo.json", R"({"n": 10, "F": 3, "pilot_count": 1, "b_M": 0,
        "p_FA": 0.05, "lambda_B_dB": 20, "lambda_T_over_lambda_B": 0.3, "h_min": 0.5, "hmax": 1})")
                                        .string()) == 1);
    CHECK(run("simulate --trials 0 --config " + good) == 1);

    // Parses, but the threshold leaves no acceptance region.
    const auto empty = s.write("empty.json", R"({"n": 10, "F": 1, "pilot_count": 1, "b_M": 0, "p_FA": 0.999,
        "lambda_B_dB": 20, "lambda_T_over_lambda_B": 0.3, "h_min": 0.5})");
    CHECK(run("analyze --config " + empty.string()) == 2);
}

TEST_CASE("command line outputs")
{
    const Scratch s;
    const auto good = (fs::path(CRPLA_CONFIG_DIR) / "fig2_point.json").string();

    const auto out = s.dir / "report.json";
    REQUIRE(run("analyze --config " + good + " --out " + out.string()) == 0);
    const auto report = json::parse(slurp(out));
    CHECK(report["hybrid"]["security"]["b_tot"].get<double>() ==
          analyze_report(params_from_json(load_json_file(good)), {})["hybrid"]["security"]["b_tot"].get<double>());

    const auto opt = s.dir / "opt.json", grid = s.dir / "grid.csv";
    REQUIRE(run("optimize --config " + good + " --pilots 1,2,3 --h-min-values 0,0.5,0.9 --out " + opt.string() +
                " --grid-csv " + grid.string()) == 0);
    const auto o = json::parse(slurp(opt));
    CHECK(o["grid"]["pilot_counts"] == json({1, 2, 3}));
    CHECK(o["optimum"]["pilot_count_used"] == 1);
    CHECK(o["optimum"]["h_min_used"] == 0.9);
    const auto csv = slurp(grid);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 10);

    const auto geometry = (fs::path(CRPLA_CONFIG_DIR) / "geometry_f2.json").string();
    const auto table = s.dir / "sim.csv";
    CHECK(run("simulate --trials 100000 --seed 3 --config " + geometry + " --out " + table.string()) == 0);
    CHECK(slurp(table).rfind("check,reference,empirical,band_low,band_high,trials,successes,status\n", 0) == 0);

    const auto spec = s.write("sweep.json", sweep_doc().dump());
    const auto csv1 = s.dir / "a.csv", csv4 = s.dir / "b.csv";
    REQUIRE(run("--jobs 1 sweep --config " + spec.string() + " --out " + csv1.string()) == 0);
    REQUIRE(run("--jobs 4 sweep --config " + spec.string() + " --out " + csv4.string()) == 0);
    CHECK(slurp(csv1) == slurp(csv4));
    CHECK(run("sweep --config " + spec.string()) == 1);
}
