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

#include <cstdint>
#include <vector>

// Seeded Monte Carlo checks of the analytic model. All routines are
// deterministic in (inputs, seed, trials) and independent of `jobs`.
namespace crpla::mc
{

struct TrialBatch
{
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    double estimate = 0.0;
    double wilson_3sigma_low = 0.0;
    double wilson_3sigma_high = 0.0;
    std::uint64_t seed = 0;

    bool contains(double p) const { return p >= wilson_3sigma_low && p <= wilson_3sigma_high; }
};

/// Batch with Wilson score interval at z = 3.
TrialBatch make_batch(std::uint64_t trials, std::uint64_t successes, std::uint64_t seed);

/// One challenge and one attack: per frame |h_k|, |a_k| uniform on
/// [h_min, h_max] with independent uniform signs.
struct ChallengeDraw
{
    std::vector<double> h;
    std::vector<double> a;
};

ChallengeDraw draw_challenge(const SystemParams &params, std::uint64_t seed, std::uint64_t trial);

struct EstimatorMoments
{
    std::uint64_t trials = 0;
    double mean = 0.0;
    double variance = 0.0; // unbiased sample variance
};

/*!
Symbol-level simulation of the pilot-based amplitude estimate
h_hat = (1 / pilots) * sum_t Re[y_t / x_t], with y_t = h x_t + w_t.

Pilots have unit modulus and uniform phase; the channel phase is taken as
compensated. Each real dimension of w_t has variance 1 / lambda_B, which
makes h_hat ~ N(h, 1 / (lambda_B * pilots)). lambda_B may be +infinity
(noiseless).
*/
EstimatorMoments simulate_pilot_estimation(double h, double lambda_b, int pilot_count, std::uint64_t trials,
                                           std::uint64_t seed, unsigned jobs = 1);

enum class ChannelLaw
{
    Uniform,     // |h_k| uniform on [h_min, h_max], random sign
    PinnedToMax, // h_k = h_max in every frame
};

/// Rejection rate of legitimate traffic: h_hat_k = h_k + N(0, sigma_h^2),
/// rejection iff the test statistic exceeds tau.
TrialBatch measure_false_alarm(const SystemParams &params, double tau, std::uint64_t trials, std::uint64_t seed,
                               unsigned jobs = 1, ChannelLaw law = ChannelLaw::Uniform);

struct AttackMeasurement
{
    TrialBatch batch;
    double analytic_p_succ = 0.0;
    /// No success observed while the analytic expectation is below 10 hits:
    /// the run cannot confirm or refute the model.
    bool insufficient_resolution = false;
};

/// Noiseless injection attack: success iff sum_k (a_k - h_k)^2 <= R_s^2.
AttackMeasurement measure_attack_success(const SystemParams &params, double tau, std::uint64_t trials,
                                         std::uint64_t seed, unsigned jobs = 1);

} // namespace crpla::mc
