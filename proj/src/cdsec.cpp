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

#include "crpla/cdsec.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace crpla::cdsec
{

namespace
{

double clamp_key(double b1, double b2)
{
    const double m = std::min(b1, b2);
    return m > 0.0 ? m : 0.0;
}

// log2(1 + x); log1p keeps low-SNR integrands smooth where 1 + x would round.
double log2_1p(double x) { return x < 0.25 ? std::log1p(x) * std::numbers::log2e : std::log2(1.0 + x); }

} // namespace

double mutual_info_fixed(double h, double lambda_b) { return log2_1p(h * h * lambda_b); }

double eavesdropper_info(double lambda_t) { return log2_1p(lambda_t); }

double gaussian_dispersion(double snr)
{
    const double log2e = std::numbers::log2e;
    return snr * (snr + 2.0) * log2e * log2e / ((snr + 1.0) * (snr + 1.0));
}

double rate_cd(const SystemParams &params, double p_fa_cd)
{
    const double snr = params.h_max * params.h_max * params.lambda_b;
    const double symbols = static_cast<double>(params.n) * static_cast<double>(params.frames);
    return mutual_info_fixed(1.0, snr) - std::sqrt(gaussian_dispersion(snr) / symbols) * specfun::q_inverse(p_fa_cd);
}

RateReport b_key_cd(const SystemParams &params, double p_fa_cd)
{
    const double snr = params.h_max * params.h_max * params.lambda_b;
    const double symbols = static_cast<double>(params.n) * static_cast<double>(params.frames);

    RateReport r;
    r.i_xy = mutual_info_fixed(1.0, snr);
    r.i_xz = eavesdropper_info(params.lambda_t);
    r.dispersion = gaussian_dispersion(snr);
    r.rate = rate_cd(params, p_fa_cd);
    r.b_key_1 = symbols * r.rate - static_cast<double>(params.message_bits);
    r.b_key_2 = symbols * (r.rate - r.i_xz);
    r.b_key = clamp_key(r.b_key_1, r.b_key_2);
    return r;
}

FadingMoments fading_moments(double h_min, double h_max, double lambda_b, const specfun::QuadratureSpec &spec)
{
    FadingMoments m;
    if (h_min == h_max)
    {
        m.mean_info = mutual_info_fixed(h_min, lambda_b);
        m.var_info = 0.0;
        m.mean_inverse = 1.0 / (1.0 + h_min * h_min * lambda_b);
        return m;
    }

    auto info = [lambda_b](double h) { return mutual_info_fixed(h, lambda_b); };
    m.mean_info = specfun::uniform_expectation(info, h_min, h_max, spec);
    const double second = specfun::uniform_expectation(
        [&](double h) {
            const double i = info(h);
            return i * i;
        },
        h_min, h_max, spec);
    m.mean_inverse = specfun::uniform_expectation(
        [lambda_b](double h) { return 1.0 / (1.0 + h * h * lambda_b); }, h_min, h_max, spec);

    // E[I^2] - E[I]^2 cancels when the interval is narrow; tiny negatives are
    // rounding noise, anything larger is a real failure.
    const double var = second - m.mean_info * m.mean_info;
    if (var < -1e-9)
        throw Error(ErrorKind::NumericError, "negative variance of the mutual information");
    m.var_info = var > 0.0 ? var : 0.0;
    return m;
}

namespace
{

double dispersion_from(const FadingMoments &m, int n_data)
{
    return static_cast<double>(n_data) * m.var_info + 1.0 - m.mean_inverse * m.mean_inverse;
}

} // namespace

double dispersion_block_fading(const SystemParams &params, const specfun::QuadratureSpec &spec)
{
    const auto m = fading_moments(params.h_min, params.h_max, params.lambda_b, spec);
    return dispersion_from(m, params.n_data());
}

double avg_rate_hybrid(const SystemParams &params, double p_fa_cd, const specfun::QuadratureSpec &spec)
{
    if (params.n_data() < 1)
        throw Error(ErrorKind::AllPilots, "no data symbols left for the codeword");
    const auto m = fading_moments(params.h_min, params.h_max, params.lambda_b, spec);
    const double v = dispersion_from(m, params.n_data());
    const double symbols = static_cast<double>(params.n_data()) * static_cast<double>(params.frames);
    return m.mean_info - std::sqrt(v / symbols) * specfun::q_inverse(p_fa_cd);
}

RateReport b_key_hybrid(const SystemParams &params, double p_fa_cd, const specfun::QuadratureSpec &spec)
{
    RateReport r;
    r.i_xz = eavesdropper_info(params.lambda_t);
    if (params.n_data() < 1)
    {
        // All-pilot frames: nothing is encoded, the coding check is absent.
        r.b_key_1 = -static_cast<double>(params.message_bits);
        return r;
    }

    const auto m = fading_moments(params.h_min, params.h_max, params.lambda_b, spec);
    const double symbols = static_cast<double>(params.n_data()) * static_cast<double>(params.frames);
    r.i_xy = m.mean_info;
    r.dispersion = dispersion_from(m, params.n_data());
    r.rate = m.mean_info - std::sqrt(r.dispersion / symbols) * specfun::q_inverse(p_fa_cd);
    r.b_key_1 = symbols * r.rate - static_cast<double>(params.message_bits);
    r.b_key_2 = symbols * (r.rate - r.i_xz);
    r.b_key = clamp_key(r.b_key_1, r.b_key_2);
    return r;
}

} // namespace crpla::cdsec
