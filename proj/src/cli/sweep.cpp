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

#include "crpla/cli/sweep.hpp"
#include "crpla/config.hpp"
#include "crpla/parallel.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <unistd.h>

namespace crpla::cli
{

using nlohmann::json;

namespace
{

[[noreturn]] void fail(const std::string &msg) { throw Error(ErrorKind::ConfigParseError, msg); }

SweepVariable parse_variable(const std::string &name)
{
    if (name == "h_min") return SweepVariable::HMin;
    if (name == "lambda_ratio") return SweepVariable::LambdaRatio;
    if (name == "lambda_B_dB") return SweepVariable::LambdaBdB;
    if (name == "F") return SweepVariable::Frames;
    if (name == "alpha") return SweepVariable::Alpha;
    fail("unknown sweep variable '" + name + "'");
}

SweepMechanism parse_mechanism(const std::string &name)
{
    if (name == "CH") return SweepMechanism::Channel;
    if (name == "CD") return SweepMechanism::Coding;
    if (name == "HYBRID") return SweepMechanism::Hybrid;
    if (name == "HYBRID_OPT") return SweepMechanism::HybridOpt;
    fail("unknown mechanism '" + name + "'");
}

const char *document_key(SweepVariable v)
{
    switch (v)
    {
    case SweepVariable::HMin: return "h_min";
    case SweepVariable::LambdaRatio: return "lambda_T_over_lambda_B";
    case SweepVariable::LambdaBdB: return "lambda_B_dB";
    case SweepVariable::Frames: return "F";
    case SweepVariable::Alpha: return "alpha";
    }
    return "";
}

double number_at(const json &obj, const char *key)
{
    if (!obj.contains(key) || !obj.at(key).is_number())
        fail(std::string("sweep field '") + key + "' must be a number");
    return obj.at(key).get<double>();
}

} // namespace

std::string_view to_string(SweepVariable v) noexcept
{
    switch (v)
    {
    case SweepVariable::HMin: return "h_min";
    case SweepVariable::LambdaRatio: return "lambda_ratio";
    case SweepVariable::LambdaBdB: return "lambda_B_dB";
    case SweepVariable::Frames: return "F";
    case SweepVariable::Alpha: return "alpha";
    }
    return "?";
}

std::string_view to_string(SweepMechanism m) noexcept
{
    switch (m)
    {
    case SweepMechanism::Channel: return "CH";
    case SweepMechanism::Coding: return "CD";
    case SweepMechanism::Hybrid: return "HYBRID";
    case SweepMechanism::HybridOpt: return "HYBRID_OPT";
    }
    return "?";
}

SweepSpec sweep_spec_from_json(const json &doc)
{
    if (!doc.is_object())
        fail("sweep spec must be a JSON object");
    for (const auto &[key, value] : doc.items())
        if (key != "fixed" && key != "sweep" && key != "mechanisms" && key != "series" && key != "grid")
            fail("unknown sweep spec field '" + key + "'");

    SweepSpec spec;
    if (!doc.contains("fixed") || !doc.at("fixed").is_object())
        fail("sweep spec needs a 'fixed' parameter object");
    spec.fixed = doc.at("fixed");

    if (!doc.contains("sweep") || !doc.at("sweep").is_object())
        fail("sweep spec needs a 'sweep' object");
    const json &sweep = doc.at("sweep");
    if (!sweep.contains("variable") || !sweep.at("variable").is_string())
        fail("sweep.variable must be a string");
    spec.variable = parse_variable(sweep.at("variable").get<std::string>());

    if (sweep.contains("values") == sweep.contains("range"))
        fail("sweep needs exactly one of 'values' or 'range'");
    if (sweep.contains("values"))
    {
        if (!sweep.at("values").is_array())
            fail("sweep.values must be an array");
        for (const auto &v : sweep.at("values"))
        {
            if (!v.is_number())
                fail("sweep.values must hold numbers");
            spec.values.push_back(v.get<double>());
        }
    }
    else
    {
        const json &range = sweep.at("range");
        const double start = number_at(range, "start");
        const double stop = number_at(range, "stop");
        const double count = number_at(range, "count");
        if (count < 1 || count != std::floor(count))
            fail("sweep.range.count must be a positive integer");
        const int n = static_cast<int>(count);
        for (int i = 0; i < n; ++i)
            spec.values.push_back(n == 1 ? start : start + (stop - start) * static_cast<double>(i) / (n - 1));
    }
    if (spec.values.empty())
        fail("sweep value list must be non-empty");

    if (!doc.contains("mechanisms") || !doc.at("mechanisms").is_array() || doc.at("mechanisms").empty())
        fail("sweep spec needs a non-empty 'mechanisms' array");
    for (const auto &m : doc.at("mechanisms"))
    {
        if (!m.is_string())
            fail("mechanisms must be strings");
        spec.mechanisms.push_back(parse_mechanism(m.get<std::string>()));
    }

    if (doc.contains("series"))
    {
        if (!doc.at("series").is_array() || doc.at("series").empty())
            fail("'series' must be a non-empty array");
        for (const auto &s : doc.at("series"))
        {
            if (!s.is_object() || !s.contains("label") || !s.at("label").is_string())
                fail("each series needs a string 'label'");
            SeriesSpec series{s.at("label").get<std::string>(), s.value("set", json::object())};
            if (!series.overrides.is_object())
                fail("series 'set' must be an object");
            spec.series.push_back(std::move(series));
        }
    }

    if (doc.contains("grid"))
    {
        const json &grid = doc.at("grid");
        if (!grid.is_object())
            fail("'grid' must be an object");
        if (grid.contains("pilot_counts"))
        {
            std::vector<int> counts;
            for (const auto &v : grid.at("pilot_counts"))
            {
                if (!v.is_number_integer())
                    fail("grid.pilot_counts must hold integers");
                counts.push_back(v.get<int>());
            }
            spec.grid_pilot_counts = std::move(counts);
        }
        if (grid.contains("h_min_points"))
        {
            if (!grid.at("h_min_points").is_number_integer() || grid.at("h_min_points").get<int>() < 1)
                fail("grid.h_min_points must be a positive integer");
            spec.grid_h_min_points = grid.at("h_min_points").get<int>();
        }
    }

    // Fail early on invalid points rather than halfway through a run.
    for (const auto &series : spec.series)
        params_from_json(point_document(spec, &series, spec.values.front()));
    for (double v : spec.values)
        params_from_json(point_document(spec, spec.series.empty() ? nullptr : &spec.series.front(), v));
    return spec;
}

json point_document(const SweepSpec &spec, const SeriesSpec *series, double value)
{
    json doc = spec.fixed;
    if (series)
        doc.merge_patch(series->overrides);
    if (spec.variable == SweepVariable::Alpha)
        doc.erase("pilot_count");
    if (spec.variable == SweepVariable::Frames)
    {
        if (value != std::floor(value))
            fail("swept F value must be an integer");
        doc[document_key(spec.variable)] = static_cast<std::int64_t>(value);
    }
    else
    {
        doc[document_key(spec.variable)] = value;
    }
    return doc;
}

hybrid::OptimizationGrid point_grid(const SweepSpec &spec, const SystemParams &params)
{
    auto grid = hybrid::default_grid(params);
    if (spec.grid_pilot_counts)
        grid.pilot_counts = *spec.grid_pilot_counts;
    if (spec.grid_h_min_points)
    {
        const int points = *spec.grid_h_min_points;
        grid.h_min_values.clear();
        for (int i = 0; i < points; ++i)
            grid.h_min_values.push_back(points == 1 ? 0.0
                                                    : params.h_max * static_cast<double>(i) / (points - 1));
    }
    if (spec.variable == SweepVariable::HMin)
        grid.h_min_values = {params.h_min};
    if (spec.variable == SweepVariable::Alpha)
        grid.pilot_counts = {params.pilot_count};
    return grid;
}

std::vector<SweepRow> run_sweep(const SweepSpec &spec, const hybrid::HybridOptions &options, unsigned jobs)
{
    const std::size_t n_series = spec.series.empty() ? 1 : spec.series.size();
    const std::size_t n_values = spec.values.size();
    std::vector<std::vector<SweepRow>> per_point(n_series * n_values);

    parallel_for(per_point.size(), jobs, [&](std::size_t i) {
        const SeriesSpec *series = spec.series.empty() ? nullptr : &spec.series[i / n_values];
        const double value = spec.values[i % n_values];
        const SystemParams params = params_from_json(point_document(spec, series, value));

        auto &rows = per_point[i];
        for (auto mech : spec.mechanisms)
        {
            SweepRow row;
            row.series = series ? series->label : std::string();
            row.value = value;
            row.mechanism = mech;
            switch (mech)
            {
            case SweepMechanism::Channel: row.report = hybrid::baseline_ch(params, options); break;
            case SweepMechanism::Coding: row.report = hybrid::baseline_cd(params); break;
            case SweepMechanism::Hybrid: row.report = hybrid::hybrid_bits(params, options); break;
            case SweepMechanism::HybridOpt:
                row.report = hybrid::optimize(params, point_grid(spec, params), options, 1);
                break;
            }
            rows.push_back(std::move(row));
        }
    });

    std::vector<SweepRow> out;
    out.reserve(per_point.size() * spec.mechanisms.size());
    for (auto &rows : per_point)
        for (auto &r : rows)
            out.push_back(std::move(r));
    return out;
}

std::string format_number(double v)
{
    if (v == 0.0)
        v = 0.0; // no "-0"
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string format_sweep_csv(const SweepSpec &spec, const std::vector<SweepRow> &rows)
{
    const bool with_series = !spec.series.empty();
    std::string out;
    if (with_series)
        out += "series,";
    out += "swept_var,value,mechanism,alpha_used,h_min_used,b_ch,b_key,b_tot\n";
    for (const auto &r : rows)
    {
        if (with_series)
            out += r.series + ",";
        out += std::string(to_string(spec.variable)) + "," + format_number(r.value) + "," +
               std::string(to_string(r.mechanism)) + "," + format_number(r.report.alpha_used) + "," +
               format_number(r.report.h_min_used) + "," + format_number(r.report.b_ch) + "," +
               format_number(r.report.b_key) + "," + format_number(r.report.b_tot()) + "\n";
    }
    return out;
}

void write_file_atomic(const std::filesystem::path &path, const std::string &content)
{
    auto tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
        out << content;
        out.flush();
        if (!out)
        {
            out.close();
            std::filesystem::remove(tmp);
            throw std::runtime_error("failed writing '" + tmp.string() + "'");
        }
    }
    std::filesystem::rename(tmp, path);
}

} // namespace crpla::cli
