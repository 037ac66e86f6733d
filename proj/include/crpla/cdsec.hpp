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
#include "crpla/specfun.hpp"

// Coding-based security: key bits that a wiretap code can hide from the
// attacker while still delivering the b_M-bit message at decoding error
// probability p_fa_cd. Rates are bits per complex symbol.
namespace crpla::cdsec
{

struct RateReport
{
    double i_xy = 0.0;       // legitimate mutual information (fixed, or averaged over fading)
    double i_xz = 0.0;       // attacker mutual information, no finite-length back-off
    double dispersion = 0.0; // V
    double rate = 0.0;       // R or R-bar after the finite-blocklength back-off
    double b_key_1 = 0.0;    // reliability budget, may be negative
    double b_key_2 = 0.0;    // secrecy budget, may be negative
    double b_key = 0.0;      // max(0, min(b_key_1, b_key_2))
};

/// log2(1 + h^2 lambda_B).
double mutual_info_fixed(double h, double lambda_b);

/// log2(1 + lambda_T).
double eavesdropper_info(double lambda_t);

/// Dispersion of the complex AWGN channel at SNR S, in bits^2:
/// S (S + 2) log2(e)^2 / (S + 1)^2.
double gaussian_dispersion(double snr);

/// Finite-blocklength rate of the fixed channel h = h_max over n F symbols.
double rate_cd(const SystemParams &params, double p_fa_cd);

/// Key bits of the coding-only mechanism (no pilots, channel fixed at h_max).
RateReport b_key_cd(const SystemParams &params, double p_fa_cd);

/// Moments of I_k = log2(1 + h^2 lambda_B) and of 1 / (1 + h^2 lambda_B) for
/// h uniform on [h_min, h_max]; a point mass when h_min == h_max.
struct FadingMoments
{
    double mean_info = 0.0;
    double var_info = 0.0;
    double mean_inverse = 0.0;
};

FadingMoments fading_moments(double h_min, double h_max, double lambda_b,
                             const specfun::QuadratureSpec &spec = {});

/// Block-fading dispersion n' Var[I] + 1 - E[1 / (1 + h^2 lambda_B)]^2.
double dispersion_block_fading(const SystemParams &params, const specfun::QuadratureSpec &spec = {});

/// Average rate E[I] - sqrt(V / (n' F)) Q^-1(p_fa_cd). Throws AllPilots when n' = 0.
double avg_rate_hybrid(const SystemParams &params, double p_fa_cd, const specfun::QuadratureSpec &spec = {});

/// Key bits of the coding part of the hybrid scheme, over n' F data symbols.
/// An all-pilot frame carries no codeword and yields b_key = 0.
RateReport b_key_hybrid(const SystemParams &params, double p_fa_cd, const specfun::QuadratureSpec &spec = {});

} // namespace crpla::cdsec
