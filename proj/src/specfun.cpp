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

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace crpla::specfun
{

double q_function(double x)
{
    // erfc keeps full relative accuracy in the upper tail, where 1 - Phi(x)
    // would cancel.
    return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

namespace
{

// Rational approximation of the standard normal quantile (P. J. Acklam),
// relative error about 1.2e-9; used only as the starting point for Halley.
double normal_quantile_guess(double p)
{
    static constexpr std::array<double, 6> a = {-3.969683028665376e+01, 2.209460984245205e+02,
                                                -2.759285104469687e+02, 1.383577518672690e+02,
                                                -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr std::array<double, 5> b = {-5.447609879822406e+01, 1.615858368580409e+02,
                                                -1.556989798598866e+02, 6.680131188771972e+01,
                                                -1.328068155288572e+01};
    static constexpr std::array<double, 6> c = {-7.784894002430293e-03, -3.223964580411365e-01,
                                                -2.400758277161838e+00, -2.549732539343734e+00,
                                                4.374664141464968e+00, 2.938163982698783e+00};
    static constexpr std::array<double, 4> d = {7.784695709041462e-03, 3.224671290700398e-01,
                                                2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    auto tail = [&](double q) {
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    };

    if (p < p_low)
        return tail(std::sqrt(-2.0 * std::log(p)));
    if (p > 1.0 - p_low)
        return -tail(std::sqrt(-2.0 * std::log1p(-p)));

    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

} // namespace

double q_inverse(double p)
{
    if (!(p > 0.0 && p < 1.0))
        throw Error(ErrorKind::DomainError, "q_inverse requires p in (0, 1), got " + std::to_string(p));
    if (p == 0.5)
        return 0.0;

    double x = -normal_quantile_guess(p);
    for (int iter = 0; iter < 6; ++iter)
    {
        const double pdf = normal_pdf(x);
        if (pdf == 0.0)
            break;
        // Halley step on Q(x) - p: Q' = -pdf, Q'' = x * pdf.
        const double t = (q_function(x) - p) / pdf;
        const double step = t / (1.0 - 0.5 * x * t);
        x += step;
        if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x)))
            break;
    }
    return x;
}

double log_gamma(double x)
{
    if (std::isnan(x) || x <= 0.0)
        throw Error(ErrorKind::DomainError, "log_gamma requires x > 0, got " + std::to_string(x));
    if (std::isinf(x))
        return x;
    if (x == 1.0 || x == 2.0)
        return 0.0; // the zeros of ln Gamma, exact rather than within rounding

    // Shift into the asymptotic range: Gamma(x) = Gamma(x + k) / (x (x+1) ... (x+k-1)).
    double shift = 1.0;
    while (x < 10.0)
    {
        shift *= x;
        x += 1.0;
    }

    // Stirling series with Bernoulli-number corrections through x^-13.
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    const double series =
        inv * (1.0 / 12.0 +
               inv2 * (-1.0 / 360.0 +
                       inv2 * (1.0 / 1260.0 +
                               inv2 * (-1.0 / 1680.0 +
                                       inv2 * (1.0 / 1188.0 + inv2 * (-691.0 / 360360.0 + inv2 / 156.0))))));
    const double half_log_two_pi = 0.91893853320467274178;
    return (x - 0.5) * std::log(x) - x + half_log_two_pi + series - std::log(shift);
}

double chi_square_sf(double x, int k)
{
    if (k < 1)
        throw Error(ErrorKind::DomainError, "chi_square_sf needs k >= 1");
    if (std::isnan(x) || x < 0.0)
        throw Error(ErrorKind::DomainError, "chi_square_sf needs x >= 0, got " + std::to_string(x));
    if (x == 0.0)
        return 1.0;
    if (std::isinf(x))
        return 0.0;

    const double a = 0.5 * static_cast<double>(k);
    const double y = 0.5 * x;
    const double log_prefix = -y + a * std::log(y) - log_gamma(a);
    constexpr int max_iter = 100000;
    constexpr double eps = 1e-16;

    if (y < a + 1.0)
    {
        // Lower series P(a, y), then complement.
        double ap = a;
        double del = 1.0 / a;
        double sum = del;
        for (int i = 0; i < max_iter; ++i)
        {
            ap += 1.0;
            del *= y / ap;
            sum += del;
            if (std::abs(del) < std::abs(sum) * eps)
                return 1.0 - std::exp(log_prefix) * sum;
        }
        throw Error(ErrorKind::ConvergenceError, "chi_square_sf series did not converge");
    }

    // Continued fraction for Q(a, y), modified Lentz.
    constexpr double tiny = 1e-300;
    double b = y + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < max_iter; ++i)
    {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny)
            d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < eps)
            return std::exp(log_prefix) * h;
    }
    throw Error(ErrorKind::ConvergenceError, "chi_square_sf continued fraction did not converge");
}

namespace
{

struct Panel
{
    double a, m, b;
    double fa, fm, fb;
    double whole;
    double tol;
    int depth;
};

double simpson(double a, double b, double fa, double fm, double fb) { return (b - a) / 6.0 * (fa + 4.0 * fm + fb); }

} // namespace

double uniform_expectation(const std::function<double(double)> &f, double a, double b, const QuadratureSpec &spec)
{
    if (!(spec.rel_tol > 0.0))
        throw Error(ErrorKind::DomainError, "quadrature tolerance must be positive");
    if (std::isnan(a) || std::isnan(b))
        throw Error(ErrorKind::DomainError, "quadrature bounds must be numbers");
    if (a == b)
        throw Error(ErrorKind::DegenerateInterval, "uniform_expectation over a single point");
    if (a > b)
        throw Error(ErrorKind::DomainError, "uniform_expectation requires a < b");

    // Coarse composite Simpson of |f| fixes the absolute error budget.
    constexpr int coarse_panels = 16;
    const double width = (b - a) / coarse_panels;
    std::vector<Panel> stack;
    double scale = 0.0;
    std::vector<Panel> initial;
    initial.reserve(coarse_panels);
    double left_x = a;
    double left_f = f(a);
    for (int i = 0; i < coarse_panels; ++i)
    {
        const double right_x = (i + 1 == coarse_panels) ? b : a + width * (i + 1);
        const double mid_x = 0.5 * (left_x + right_x);
        const double mid_f = f(mid_x);
        const double right_f = f(right_x);
        scale += simpson(left_x, right_x, std::abs(left_f), std::abs(mid_f), std::abs(right_f));
        initial.push_back({left_x, mid_x, right_x, left_f, mid_f, right_f,
                           simpson(left_x, right_x, left_f, mid_f, right_f), 0.0, 0});
        left_x = right_x;
        left_f = right_f;
    }
    if (!std::isfinite(scale))
        throw Error(ErrorKind::NumericError, "integrand is not finite on the interval");
    const double total_tol = spec.rel_tol * std::max(scale, std::numeric_limits<double>::min());
    for (auto it = initial.rbegin(); it != initial.rend(); ++it)
    {
        it->tol = total_tol / coarse_panels;
        stack.push_back(*it);
    }

    // Neumaier-compensated accumulation of accepted panels.
    double sum = 0.0;
    double comp = 0.0;
    auto accumulate = [&](double v) {
        const double t = sum + v;
        comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
        sum = t;
    };

    std::size_t subdivisions = 0;
    constexpr int max_depth = 60;
    while (!stack.empty())
    {
        const Panel p = stack.back();
        stack.pop_back();

        const double lm = 0.5 * (p.a + p.m);
        const double rm = 0.5 * (p.m + p.b);
        const double flm = f(lm);
        const double frm = f(rm);
        const double left = simpson(p.a, p.m, p.fa, flm, p.fm);
        const double right = simpson(p.m, p.b, p.fm, frm, p.fb);
        const double delta = left + right - p.whole;

        if (std::abs(delta) <= 15.0 * p.tol)
        {
            accumulate(left + right + delta / 15.0);
            continue;
        }
        if (p.depth >= max_depth || ++subdivisions > spec.max_subdivisions)
            throw Error(ErrorKind::ConvergenceError,
                        "adaptive Simpson exceeded its subdivision budget near x = " + std::to_string(p.m));

        stack.push_back({p.m, rm, p.b, p.fm, frm, p.fb, right, 0.5 * p.tol, p.depth + 1});
        stack.push_back({p.a, lm, p.m, p.fa, flm, p.fm, left, 0.5 * p.tol, p.depth + 1});
    }

    return (sum + comp) / (b - a);
}

} // namespace crpla::specfun
