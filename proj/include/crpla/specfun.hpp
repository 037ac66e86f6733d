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

#include "crpla/error.hpp"

#include <cstddef>
#include <functional>

namespace crpla::specfun
{

/// Gaussian tail probability P(N(0,1) > x).
double q_function(double x);

/// Inverse of q_function for p in (0, 1). Throws DomainError otherwise.
double q_inverse(double p);

/// Natural log of the Gamma function for x > 0.
double log_gamma(double x);

/// Survival function P(chi^2_k > x) of the chi-square law with k degrees of
/// freedom, i.e. the regularized upper incomplete gamma Q(k/2, x/2).
double chi_square_sf(double x, int k);

struct QuadratureSpec
{
    double rel_tol = 1e-10;
    std::size_t max_subdivisions = std::size_t{1} << 20;
};

/*!
Mean of f(h) for h uniform on [a, b], i.e. (1/(b-a)) * integral_a^b f.

Adaptive Simpson with interval bisection. The tolerance is relative to the
integral of |f| over the interval. Throws DegenerateInterval when a == b
(callers evaluate f(a) instead), DomainError when a > b and ConvergenceError
when the subdivision budget is exhausted.
*/
double uniform_expectation(const std::function<double(double)> &f, double a, double b,
                           const QuadratureSpec &spec = {});

} // namespace crpla::specfun
