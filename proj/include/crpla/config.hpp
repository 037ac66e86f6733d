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

#include "crpla/core.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <string_view>

namespace crpla
{

// JSON parameter document. Recognized keys:
//   n, F, alpha | pilot_count, b_M, p_FA, lambda_B_dB, lambda_T_over_lambda_B,
//   h_min, h_max (optional, defaults to 1.0)
// SNRs are given in dB / as a ratio and converted to linear scale here, once.

SystemParams params_from_json(const nlohmann::json &doc);

/// Emits pilot_count rather than alpha; the dB value and ratio are chosen so
/// that params_from_json(params_to_json(p)) reproduces p bit for bit for any
/// p obtained from params_from_json. (Not every double is a power of ten of
/// some double, so arbitrary SNRs may be off by an ulp after the round trip.)
nlohmann::json params_to_json(const SystemParams &params);

SystemParams parse_params(std::string_view text);
std::string emit_params(const SystemParams &params);

/// Parses a JSON document, reporting line/column on syntax errors.
nlohmann::json parse_json_text(std::string_view text, std::string_view origin = "<input>");
nlohmann::json load_json_file(const std::filesystem::path &path);

/// Inverse of db_to_linear that round-trips exactly whenever possible.
double linear_to_db_exact(double linear);

} // namespace crpla
