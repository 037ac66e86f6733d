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

#include "crpla/specfun.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace crpla;
using namespace crpla::specfun;

TEST_CASE("q_function: symmetry and reflection")
{
    CHECK(q_function(0.0) == 0.5);
    for (double x : {-7.5, -3.0, -0.2, 0.1, 1.0, 2.5, 6.0})
        CHECK(q_function(x) == doctest::Approx(1.0 - q_function(-x)).epsilon(1e-15));
}

TEST_CASE("q_function: relative error against extended-precision erfc on [-8, 8]")
{
    double worst = 0.0;
    for (int i = 0; i <= 1600; ++i)
    {
        const double x = -8.0 + i * 0.01;
        const double want = static_cast<double>(oracle::q_ld(x));
        worst = std::max(worst, oracle::rel_err(q_function(x), want));
    }
    CHECK(worst < 1e-12);
    CHECK(q_function(5.199337582) == doctest::Approx(1e-7).epsilon(1e-8));
}

TEST_CASE("q_function: monotone decreasing")
{
    // Below about -5 neighbouring values round to the same double.
    double prev = q_function(-9.0);
    for (double x = -8.99; x < 9.0; x += 0.01)
    {
        const double q = q_function(x);
        REQUIRE(q <= prev);
        if (x > -5.0)
            REQUIRE(q < prev);
        prev = q;
    }
}

TEST_CASE("q_inverse: reference values")
{
    CHECK(q_inverse(0.5) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(q_inverse(1e-7) == doctest::Approx(static_cast<double>(oracle::q_inverse_bisect(1e-7))).epsilon(1e-12));
    CHECK(q_inverse(1e-7) == doctest::Approx(5.1993).epsilon(1e-4));
    CHECK(q_inverse(0.05) == doctest::Approx(1.6448536269514722).epsilon(1e-13));
    for (double p : {1e-4, 0.01, 0.3})
        CHECK(q_inverse(p) + q_inverse(1.0 - p) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("q_inverse: round trip over [1e-12, 0.5]")
{
    double worst = 0.0;
    for (int i = 0; i <= 400; ++i)
    {
        const double p = std::pow(10.0, -12.0 + i * (std::log10(0.5) + 12.0) / 400.0);
        worst = std::max(worst, oracle::rel_err(q_function(q_inverse(p)), p));
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("q_inverse: domain")
{
    for (double p : {0.0, 1.0, -0.1, 1.5, std::nan("")})
        CHECK_THROWS_AS(q_inverse(p), Error);
}

TEST_CASE("log_gamma: special values and factorials")
{
    CHECK(log_gamma(1.0) == 0.0);
    CHECK(log_gamma(2.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(log_gamma(0.5) == doctest::Approx(std::log(std::sqrt(std::numbers::pi))).epsilon(1e-14));
    CHECK(log_gamma(51.0) == doctest::Approx(static_cast<double>(oracle::ln_factorial_minus_one(51))).epsilon(1e-14));
    double worst = 0.0;
    for (int m = 3; m <= 171; ++m)
        worst = std::max(worst, oracle::rel_err(log_gamma(m), static_cast<double>(oracle::ln_factorial_minus_one(m))));
    CHECK(worst < 1e-12);
}

TEST_CASE("log_gamma: half integers and recurrence")
{
    // Gamma(k + 1/2) = (2k)! sqrt(pi) / (4^k k!)
    for (int k = 1; k <= 60; ++k)
    {
        const long double want = oracle::ln_factorial_minus_one(2 * k + 1) + 0.5L * std::log(std::numbers::pi_v<long double>) -
                                 k * std::log(4.0L) - oracle::ln_factorial_minus_one(k + 1);
        CHECK(log_gamma(k + 0.5) == doctest::Approx(static_cast<double>(want)).epsilon(1e-13));
    }
    for (double x : {0.01, 0.3, 2.7, 9.9, 10.1, 123.4})
        CHECK(log_gamma(x + 1.0) == doctest::Approx(log_gamma(x) + std::log(x)).epsilon(1e-13));
    CHECK_THROWS_AS(log_gamma(0.0), Error);
    CHECK_THROWS_AS(log_gamma(-1.5), Error);
}

TEST_CASE("chi_square_sf: closed forms")
{
    for (int k : {1, 2, 5, 100})
        CHECK(chi_square_sf(0.0, k) == 1.0);
    for (double x : {0.1, 1.0, 4.0, 30.0, 200.0})
        CHECK(chi_square_sf(x, 2) == doctest::Approx(std::exp(-x / 2)).epsilon(1e-13));
    // k = 1: P(|Z| > sqrt(x)) = 2 Q(sqrt(x))
    for (double x : {0.01, 1.0, 9.0, 50.0})
        CHECK(chi_square_sf(x, 1) == doctest::Approx(2.0 * static_cast<double>(oracle::q_ld(std::sqrt(x)))).epsilon(1e-12));
    for (int k : {4, 10, 100, 400})
        for (double x : {0.5 * k, 1.0 * k, 1.5 * k, 3.0 * k})
            CHECK(chi_square_sf(x, k) == doctest::Approx(static_cast<double>(oracle::chi_square_sf_even(x, k))).epsilon(1e-11));
    CHECK_THROWS_AS(chi_square_sf(-1.0, 3), Error);
    CHECK_THROWS_AS(chi_square_sf(1.0, 0), Error);
}

TEST_CASE("chi_square_sf: finite-F false alarm near but not equal to the Gaussian value")
{
    const double tau = q_inverse(0.05);
    const double x = std::sqrt(200.0) * tau + 100.0;
    const double exact = chi_square_sf(x, 100);
    CHECK(exact != doctest::Approx(0.05).epsilon(1e-3));
    CHECK(std::fabs(exact - 0.05) / 0.05 < 0.15);

    // Monte Carlo of a sum of 100 squared standard normals, independent generator.
    std::mt19937_64 rng(20260101);
    std::normal_distribution<double> z;
    const int trials = 10000000;
    std::int64_t hits = 0;
    for (int t = 0; t < trials; ++t)
    {
        double s = 0.0;
        for (int k = 0; k < 100; ++k)
        {
            const double v = z(rng);
            s += v * v;
        }
        hits += s > x;
    }
    const double p_hat = static_cast<double>(hits) / trials;
    CHECK(std::fabs(p_hat - exact) < 3.0 * std::sqrt(exact * (1 - exact) / trials));
}

TEST_CASE("uniform_expectation: trivial integrands")
{
    CHECK(uniform_expectation([](double) { return 3.25; }, -2.0, 7.0) == doctest::Approx(3.25).epsilon(1e-14));
    CHECK(uniform_expectation([](double h) { return h; }, 0.0, 1.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(uniform_expectation([](double h) { return h * h; }, 0.0, 3.0) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("uniform_expectation: Riemann oracle on the fading integrands")
{
    struct Case
    {
        double a, b, lambda;
    };
    for (const Case c : {Case{0.7, 1.0, 100.0}, Case{0.0, 1.0, 1e5}, Case{0.8, 1.0, 1e5}, Case{0.0, 1.0, 100.0}})
    {
        const long double lb = c.lambda;
        auto info = [lb](long double h) { return std::log2(1.0L + h * h * lb); };
        const double got_i = uniform_expectation([&](double h) { return std::log2(1.0 + h * h * c.lambda); }, c.a, c.b);
        const double got_i2 = uniform_expectation(
            [&](double h) {
                const double v = std::log2(1.0 + h * h * c.lambda);
                return v * v;
            },
            c.a, c.b);
        const double got_r = uniform_expectation([&](double h) { return 1.0 / (1.0 + h * h * c.lambda); }, c.a, c.b);
        const double want_i = static_cast<double>(oracle::riemann_mean(info, c.a, c.b, 10000000));
        const double want_i2 =
            static_cast<double>(oracle::riemann_mean([&](long double h) { return info(h) * info(h); }, c.a, c.b, 10000000));
        const double want_r = static_cast<double>(
            oracle::riemann_mean([lb](long double h) { return 1.0L / (1.0L + h * h * lb); }, c.a, c.b, 10000000));
        CHECK(oracle::rel_err(got_i, want_i) < 1e-8);
        CHECK(oracle::rel_err(got_i2, want_i2) < 1e-8);
        CHECK(oracle::rel_err(got_r, want_r) < 1e-8);
    }
}

TEST_CASE("uniform_expectation: linearity and affine invariance")
{
    auto f = [](double h) { return std::sin(3 * h) + h * h; };
    auto g = [](double h) { return std::exp(-h); };
    const double lhs = uniform_expectation([&](double h) { return 2 * f(h) - 5 * g(h); }, 0.2, 1.7);
    const double rhs = 2 * uniform_expectation(f, 0.2, 1.7) - 5 * uniform_expectation(g, 0.2, 1.7);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    // h = 0.2 + 1.5 u maps [0, 1] onto [0.2, 1.7]
    CHECK(uniform_expectation([&](double u) { return f(0.2 + 1.5 * u); }, 0.0, 1.0) ==
          doctest::Approx(uniform_expectation(f, 0.2, 1.7)).epsilon(1e-10));
}

TEST_CASE("uniform_expectation: errors")
{
    auto f = [](double h) { return h; };
    try
    {
        uniform_expectation(f, 0.5, 0.5);
        FAIL("expected DegenerateInterval");
    }
    catch (const Error &e)
    {
        CHECK(e.kind() == ErrorKind::DegenerateInterval);
    }
    try
    {
        uniform_expectation(f, 1.0, 0.0);
        FAIL("expected DomainError");
    }
    catch (const Error &e)
    {
        CHECK(e.kind() == ErrorKind::DomainError);
    }
    try
    {
        QuadratureSpec tight;
        tight.rel_tol = 1e-15;
        tight.max_subdivisions = 4;
        uniform_expectation([](double h) { return std::sqrt(h); }, 0.0, 1.0, tight);
        FAIL("expected ConvergenceError");
    }
    catch (const Error &e)
    {
        CHECK(e.kind() == ErrorKind::ConvergenceError);
    }
}
