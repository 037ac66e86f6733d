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

#include <span>

// Channel-based challenge-response security.
//
// Bob draws one channel amplitude per frame, uniformly in [h_min, h_max],
// and accepts the message iff the standardized residual energy L of the
// pilot-based estimates stays at or below the threshold tau. Geometrically
// the accepted estimates form a hypersphere of radius R_s around the true
// channel vector, and an attacker who injects a uniformly drawn vector wins
// with probability V_sphere / V_cube, where the admissible region is the
// union of 2^F orthant cubes of edge h_max - h_min (one per sign pattern).
// Boundary effects of the sphere are neglected.
namespace crpla::chsec
{

enum class ThresholdMode
{
    Asymptotic,     // tau = Q^-1(p), the F -> infinity Gaussian limit
    ExactChiSquare, // tau from the exact chi-square law of the statistic
};

struct ChannelGeometry
{
    double tau = 0.0;
    double sigma_h_sq = 0.0;
    double radius = 0.0;
    double log2_v_sphere = 0.0;
    double log2_v_cube = 0.0;
    double log2_p_succ = 0.0;
    double b_ch = 0.0;

    /// R_s > 0.1 (h_max - h_min): the small-sphere assumption is strained.
    bool boundary_warning = false;
};

double threshold_from_pfa(double p_fa_ch);
double threshold_from_pfa_exact(double p_fa_ch, int frames);
double threshold(double p_fa_ch, int frames, ThresholdMode mode);

/// Standardized statistic L = (sum_k (h_hat_k - h_k)^2 / sigma_h^2 - F) / sqrt(2F).
double test_statistic(std::span<const double> h_hat, std::span<const double> h, double sigma_h_sq);

/// Acceptance rule: authentic iff L <= tau, so that P(reject | legitimate) = Q(tau).
inline bool is_authentic(double statistic, double tau) { return statistic <= tau; }

/// Variance of the per-frame amplitude estimate, 1 / (lambda_B * pilot_count).
double estimator_variance(const SystemParams &params);

/// Squared acceptance radius (sqrt(2F) tau + F) sigma_h^2.
double acceptance_radius_sq(int frames, double tau, double sigma_h_sq);

double log2_sphere_volume(int dims, double radius);
double log2_cube_volume(int dims, double edge);

/// log2 of the attack success probability, clamped at 0; computed in the log
/// domain so that large F neither overflows nor underflows. Returns 0 when
/// h_min == h_max.
double log2_p_succ(const SystemParams &params, double tau);

/// Full geometry and equivalent key length b_ch = -log2 P_succ.
ChannelGeometry equivalent_key_bits(const SystemParams &params, double p_fa_ch,
                                    ThresholdMode mode = ThresholdMode::Asymptotic);

} // namespace crpla::chsec
