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

#include "crpla/chsec.hpp"
#include "crpla/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace crpla::chsec
{

namespace
{

double log2_gamma(double x) { return specfun::log_gamma(x) / std::numbers::ln2; }

void require_channel_check(const SystemParams &params)
{
    if (params.pilot_count < 1)
        throw Error(ErrorKind::InvalidPilotCount, "the channel check needs at least one pilot per frame");
    if (params.frames < 1)
        throw Error(ErrorKind::InvalidRange, "F must be positive");
}

} // namespace

double threshold_from_pfa(double p_fa_ch) { return specfun::q_inverse(p_fa_ch); }

double threshold_from_pfa_exact(double p_fa_ch, int frames)
{
    if (!(p_fa_ch > 0.0 && p_fa_ch < 1.0))
        throw Error(ErrorKind::DomainError, "false-alarm probability must lie in (0, 1)");
    if (frames < 1)
        throw Error(ErrorKind::DomainError, "F must be positive");

    // Solve chi_square_sf(x, F) = p for the residual energy x by bisection;
    // sf is strictly decreasing on [0, inf).
    const double f = static_cast<double>(frames);
    double lo = 0.0;
    double hi = f + 10.0 * std::sqrt(2.0 * f) + 10.0;
    while (specfun::chi_square_sf(hi, frames) > p_fa_ch)
    {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e300)
            throw Error(ErrorKind::ConvergenceError, "cannot bracket the chi-square threshold");
    }
    for (int iter = 0; iter < 2000 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++iter)
    {
        const double mid = 0.5 * (lo + hi);
        if (specfun::chi_square_sf(mid, frames) > p_fa_ch)
            lo = mid;
        else
            hi = mid;
    }
    return (0.5 * (lo + hi) - f) / std::sqrt(2.0 * f);
}

double threshold(double p_fa_ch, int frames, ThresholdMode mode)
{
    return mode == ThresholdMode::Asymptotic ? threshold_from_pfa(p_fa_ch) : threshold_from_pfa_exact(p_fa_ch, frames);
}

double test_statistic(std::span<const double> h_hat, std::span<const double> h, double sigma_h_sq)
{
    if (h_hat.size() != h.size())
        throw Error(ErrorKind::DimensionMismatch, "estimate and channel vectors differ in length");
    if (h.empty())
        throw Error(ErrorKind::DimensionMismatch, "test statistic needs at least one frame");
    if (!(sigma_h_sq > 0.0))
        throw Error(ErrorKind::DomainError, "estimator variance must be positive");

    double energy = 0.0;
    for (std::size_t k = 0; k < h.size(); ++k)
    {
        const double r = h_hat[k] - h[k];
        energy += r * r;
    }
    const double f = static_cast<double>(h.size());
    return (energy / sigma_h_sq - f) / std::sqrt(2.0 * f);
}

double estimator_variance(const SystemParams &params)
{
    require_channel_check(params);
    return 1.0 / (params.lambda_b * static_cast<double>(params.pilot_count));
}

double acceptance_radius_sq(int frames, double tau, double sigma_h_sq)
{
    const double f = static_cast<double>(frames);
    return (std::sqrt(2.0 * f) * tau + f) * sigma_h_sq;
}

double log2_sphere_volume(int dims, double radius)
{
    const double d = static_cast<double>(dims);
    return 0.5 * d * std::log2(std::numbers::pi) + d * std::log2(radius) - log2_gamma(0.5 * d + 1.0);
}

double log2_cube_volume(int dims, double edge)
{
    const double d = static_cast<double>(dims);
    return d + d * std::log2(edge);
}

double log2_p_succ(const SystemParams &params, double tau)
{
    require_channel_check(params);
    const double edge = params.edge();
    if (edge <= 0.0)
        return 0.0; // no challenge randomness: any injected estimate passes

    const double f = static_cast<double>(params.frames);
    const double sigma_h = std::sqrt(estimator_variance(params));
    const double spread = std::sqrt(2.0 * f) * tau + f;
    if (!(spread > 0.0))
        throw Error(ErrorKind::DomainError, "threshold leaves an empty acceptance region");

    const double per_frame = std::sqrt(std::numbers::pi) * std::sqrt(spread) * sigma_h / (2.0 * edge);
    const double value = f * std::log2(per_frame) - log2_gamma(0.5 * f + 1.0);
    return value < 0.0 ? value : 0.0;
}

ChannelGeometry equivalent_key_bits(const SystemParams &params, double p_fa_ch, ThresholdMode mode)
{
    require_channel_check(params);

    ChannelGeometry g;
    g.tau = threshold(p_fa_ch, params.frames, mode);
    g.sigma_h_sq = estimator_variance(params);
    const double r_sq = acceptance_radius_sq(params.frames, g.tau, g.sigma_h_sq);
    if (!(r_sq > 0.0))
        throw Error(ErrorKind::DomainError, "threshold leaves an empty acceptance region");
    g.radius = std::sqrt(r_sq);
    g.log2_v_sphere = log2_sphere_volume(params.frames, g.radius);
    g.log2_v_cube = params.edge() > 0.0 ? log2_cube_volume(params.frames, params.edge())
                                        : -std::numeric_limits<double>::infinity();
    g.log2_p_succ = log2_p_succ(params, g.tau);
    g.b_ch = g.log2_p_succ < 0.0 ? -g.log2_p_succ : 0.0;
    g.boundary_warning = params.edge() > 0.0 && g.radius > 0.1 * params.edge();
    return g;
}

} // namespace crpla::chsec
