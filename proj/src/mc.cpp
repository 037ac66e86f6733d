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

#include "crpla/mc.hpp"
#include "crpla/chsec.hpp"
#include "crpla/parallel.hpp"
#include "crpla/philox.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>

namespace crpla::mc
{

namespace
{

// Domain tags keep the experiments' streams disjoint for a shared seed.
constexpr std::uint32_t kDomainChallenge = 1;
constexpr std::uint32_t kDomainFalseAlarm = 2;
constexpr std::uint32_t kDomainPilots = 3;

// Fixed chunking: per-chunk partial results are reduced in chunk order.
constexpr std::uint64_t kChunk = 1u << 14;

std::size_t chunk_count(std::uint64_t trials) { return static_cast<std::size_t>((trials + kChunk - 1) / kChunk); }

void require_trials(std::uint64_t trials)
{
    if (trials == 0)
        throw Error(ErrorKind::DomainError, "Monte Carlo run needs at least one trial");
}

double signed_amplitude(TrialStream &s, double h_min, double edge)
{
    const double magnitude = h_min + edge * s.uniform();
    return (s.next_u32() & 1u) ? magnitude : -magnitude;
}

void fill_challenge(TrialStream &s, const SystemParams &p, std::span<double> h, std::span<double> a)
{
    const double edge = p.edge();
    for (auto &v : h)
        v = signed_amplitude(s, p.h_min, edge);
    for (auto &v : a)
        v = signed_amplitude(s, p.h_min, edge);
}

template <class TrialFn>
std::uint64_t count_successes(std::uint64_t trials, unsigned jobs, TrialFn trial_fn)
{
    std::vector<std::uint64_t> partial(chunk_count(trials), 0);
    parallel_for(partial.size(), jobs, [&](std::size_t c) {
        const std::uint64_t begin = c * kChunk;
        const std::uint64_t end = std::min(trials, begin + kChunk);
        auto fn = trial_fn; // per-chunk copy owns its scratch buffers
        std::uint64_t hits = 0;
        for (std::uint64_t t = begin; t < end; ++t)
            hits += fn(t) ? 1 : 0;
        partial[c] = hits;
    });
    std::uint64_t total = 0;
    for (auto v : partial)
        total += v;
    return total;
}

} // namespace

TrialBatch make_batch(std::uint64_t trials, std::uint64_t successes, std::uint64_t seed)
{
    require_trials(trials);
    TrialBatch b;
    b.trials = trials;
    b.successes = successes;
    b.seed = seed;

    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    constexpr double z = 3.0;
    const double denom = 1.0 + z * z / n;
    const double center = (p + z * z / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
    b.estimate = p;
    b.wilson_3sigma_low = std::min(p, std::max(0.0, center - half));
    b.wilson_3sigma_high = std::max(p, std::min(1.0, center + half));
    return b;
}

ChallengeDraw draw_challenge(const SystemParams &params, std::uint64_t seed, std::uint64_t trial)
{
    ChallengeDraw d;
    d.h.resize(static_cast<std::size_t>(params.frames));
    d.a.resize(static_cast<std::size_t>(params.frames));
    TrialStream s(seed, kDomainChallenge, trial);
    fill_challenge(s, params, d.h, d.a);
    return d;
}

EstimatorMoments simulate_pilot_estimation(double h, double lambda_b, int pilot_count, std::uint64_t trials,
                                           std::uint64_t seed, unsigned jobs)
{
    require_trials(trials);
    if (pilot_count < 1)
        throw Error(ErrorKind::InvalidPilotCount, "pilot estimation needs at least one pilot");
    if (!(lambda_b > 0.0))
        throw Error(ErrorKind::NonPositiveSnr, "lambda_B must be positive");

    const double noise_std = std::isinf(lambda_b) ? 0.0 : 1.0 / std::sqrt(lambda_b);

    struct Partial
    {
        double count = 0.0, mean = 0.0, m2 = 0.0;
    };
    std::vector<Partial> partial(chunk_count(trials));
    parallel_for(partial.size(), jobs, [&](std::size_t c) {
        const std::uint64_t begin = c * kChunk;
        const std::uint64_t end = std::min(trials, begin + kChunk);
        Partial acc;
        for (std::uint64_t t = begin; t < end; ++t)
        {
            TrialStream s(seed, kDomainPilots, t);
            double sum = 0.0;
            for (int k = 0; k < pilot_count; ++k)
            {
                const double phase = 2.0 * std::numbers::pi * s.uniform();
                const double x_re = std::cos(phase);
                const double x_im = std::sin(phase);
                const double y_re = h * x_re + noise_std * s.normal();
                const double y_im = h * x_im + noise_std * s.normal();
                // y / x = y * conj(x) for |x| = 1; keep the real part.
                sum += y_re * x_re + y_im * x_im;
            }
            const double estimate = sum / static_cast<double>(pilot_count);
            acc.count += 1.0;
            const double delta = estimate - acc.mean;
            acc.mean += delta / acc.count;
            acc.m2 += delta * (estimate - acc.mean);
        }
        partial[c] = acc;
    });

    Partial total;
    for (const auto &p : partial)
    {
        const double count = total.count + p.count;
        const double delta = p.mean - total.mean;
        total.mean += delta * p.count / count;
        total.m2 += p.m2 + delta * delta * total.count * p.count / count;
        total.count = count;
    }

    EstimatorMoments m;
    m.trials = trials;
    m.mean = total.mean;
    m.variance = trials > 1 ? total.m2 / (total.count - 1.0) : 0.0;
    return m;
}

TrialBatch measure_false_alarm(const SystemParams &params, double tau, std::uint64_t trials, std::uint64_t seed,
                               unsigned jobs, ChannelLaw law)
{
    require_trials(trials);
    const double sigma_h_sq = chsec::estimator_variance(params);
    const double sigma_h = std::sqrt(sigma_h_sq);
    const auto frames = static_cast<std::size_t>(params.frames);
    const double edge = params.edge();

    struct Trial
    {
        const SystemParams *p;
        double tau, sigma_h_sq, sigma_h, edge;
        std::uint64_t seed;
        ChannelLaw law;
        std::vector<double> h, h_hat;

        bool operator()(std::uint64_t t)
        {
            TrialStream s(seed, kDomainFalseAlarm, t);
            for (std::size_t k = 0; k < h.size(); ++k)
            {
                h[k] = law == ChannelLaw::PinnedToMax ? p->h_max : signed_amplitude(s, p->h_min, edge);
                h_hat[k] = h[k] + sigma_h * s.normal();
            }
            return !chsec::is_authentic(chsec::test_statistic(h_hat, h, sigma_h_sq), tau);
        }
    };

    Trial proto{&params, tau, sigma_h_sq, sigma_h, edge, seed, law,
                std::vector<double>(frames), std::vector<double>(frames)};
    return make_batch(trials, count_successes(trials, jobs, proto), seed);
}

AttackMeasurement measure_attack_success(const SystemParams &params, double tau, std::uint64_t trials,
                                         std::uint64_t seed, unsigned jobs)
{
    require_trials(trials);
    const double r_sq = chsec::acceptance_radius_sq(params.frames, tau, chsec::estimator_variance(params));
    if (!(r_sq > 0.0))
        throw Error(ErrorKind::DomainError, "threshold leaves an empty acceptance region");
    const auto frames = static_cast<std::size_t>(params.frames);

    struct Trial
    {
        const SystemParams *p;
        double r_sq;
        std::uint64_t seed;
        std::vector<double> h, a;

        bool operator()(std::uint64_t t)
        {
            TrialStream s(seed, kDomainChallenge, t);
            fill_challenge(s, *p, h, a);
            double dist_sq = 0.0;
            for (std::size_t k = 0; k < h.size(); ++k)
            {
                const double d = a[k] - h[k];
                dist_sq += d * d;
            }
            return dist_sq <= r_sq;
        }
    };

    Trial proto{&params, r_sq, seed, std::vector<double>(frames), std::vector<double>(frames)};

    AttackMeasurement m;
    m.batch = make_batch(trials, count_successes(trials, jobs, proto), seed);
    m.analytic_p_succ = std::exp2(chsec::log2_p_succ(params, tau));
    m.insufficient_resolution = m.batch.successes == 0 && m.analytic_p_succ * static_cast<double>(trials) < 10.0;
    return m;
}

} // namespace crpla::mc
