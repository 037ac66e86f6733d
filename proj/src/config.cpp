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

#include "crpla/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace crpla
{

namespace
{

using nlohmann::json;

[[noreturn]] void fail(const std::string &msg) { throw Error(ErrorKind::ConfigParseError, msg); }

double get_number(const json &doc, const char *key)
{
    const auto it = doc.find(key);
    if (it == doc.end())
        fail(std::string("missing field '") + key + "'");
    if (!it->is_number())
        fail(std::string("field '") + key + "' must be a number");
    return it->get<double>();
}

std::int64_t get_integer(const json &doc, const char *key)
{
    const double v = get_number(doc, key);
    if (!std::isfinite(v) || v != std::floor(v) || std::abs(v) > 9.0e15)
        fail(std::string("field '") + key + "' must be an integer");
    return static_cast<std::int64_t>(v);
}

int get_int(const json &doc, const char *key)
{
    const auto v = get_integer(doc, key);
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
        fail(std::string("field '") + key + "' is out of range");
    return static_cast<int>(v);
}

// Walks nextafter() from an initial guess until forward(x) == target.
template <class Forward>
double exact_preimage(double guess, double target, Forward forward)
{
    double x = guess;
    for (int step = 0; step < 64; ++step)
    {
        const double y = forward(x);
        if (y == target)
            return x;
        x = std::nextafter(x, y < target ? std::numeric_limits<double>::infinity()
                                         : -std::numeric_limits<double>::infinity());
    }
    return guess;
}

} // namespace

double linear_to_db_exact(double linear)
{
    return exact_preimage(10.0 * std::log10(linear), linear, [](double db) { return db_to_linear(db); });
}

SystemParams params_from_json(const json &doc)
{
    static const std::set<std::string> known = {"n", "F", "alpha", "pilot_count", "b_M", "p_FA",
                                                "lambda_B_dB", "lambda_T_over_lambda_B", "h_min", "h_max"};
    if (!doc.is_object())
        fail("parameter document must be a JSON object");
    for (const auto &[key, value] : doc.items())
        if (!known.contains(key))
            fail("unknown field '" + key + "'");

    SystemParams p;
    p.n = get_int(doc, "n");
    p.frames = get_int(doc, "F");
    if (p.n < 1)
        throw Error(ErrorKind::InvalidRange, "n must be positive");

    const bool has_alpha = doc.contains("alpha");
    const bool has_pilots = doc.contains("pilot_count");
    if (has_alpha == has_pilots)
        fail("exactly one of 'alpha' or 'pilot_count' must be given");
    p.pilot_count = has_pilots ? get_int(doc, "pilot_count") : pilot_count_from_alpha(p.n, get_number(doc, "alpha"));

    p.message_bits = get_integer(doc, "b_M");
    p.p_fa = get_number(doc, "p_FA");
    p.lambda_b = db_to_linear(get_number(doc, "lambda_B_dB"));
    p.lambda_t = get_number(doc, "lambda_T_over_lambda_B") * p.lambda_b;
    p.h_min = get_number(doc, "h_min");
    p.h_max = doc.contains("h_max") ? get_number(doc, "h_max") : 1.0;

    return validate(p);
}

json params_to_json(const SystemParams &p)
{
    const double ratio = exact_preimage(p.lambda_t / p.lambda_b, p.lambda_t,
                                        [&](double r) { return r * p.lambda_b; });
    json doc;
    doc["n"] = p.n;
    doc["F"] = p.frames;
    doc["pilot_count"] = p.pilot_count;
    doc["b_M"] = p.message_bits;
    doc["p_FA"] = p.p_fa;
    doc["lambda_B_dB"] = linear_to_db_exact(p.lambda_b);
    doc["lambda_T_over_lambda_B"] = ratio;
    doc["h_min"] = p.h_min;
    doc["h_max"] = p.h_max;
    return doc;
}

json parse_json_text(std::string_view text, std::string_view origin)
{
    try
    {
        return json::parse(text.begin(), text.end());
    }
    catch (const json::parse_error &e)
    {
        // nlohmann reports "line L, column C" inside e.what().
        fail(std::string(origin) + ": " + e.what());
    }
}

json load_json_file(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str(), path.string());
}

SystemParams parse_params(std::string_view text) { return params_from_json(parse_json_text(text)); }

std::string emit_params(const SystemParams &params) { return params_to_json(params).dump(2); }

} // namespace crpla
