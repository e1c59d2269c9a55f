// SPDX-License-Identifier: Apache-2.0
//
// fama-bench: link-level simulator for fluid antenna multiple access
// Copyright (C) 2026 The fama-bench authors
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

#ifndef FAMA_BESSEL_HPP
#define FAMA_BESSEL_HPP

#include <cmath>
#include <numbers>

namespace fama {

namespace detail {

// Ascending power series, accurate while the largest term stays small
// relative to the long double epsilon (|x| < 12 keeps it below ~4e3).
inline long double bessel_j0_series(long double x)
{
    const long double q = x * x / 4.0L;
    long double term = 1.0L;
    long double sum = 1.0L;
    for (int k = 1; k < 200; ++k)
    {
        term *= -q / (static_cast<long double>(k) * k);
        sum += term;
        if (std::fabs(term) < 1e-22L * std::fabs(sum) + 1e-30L)
            break;
    }
    return sum;
}

// Miller backward recurrence normalised with J0 + 2*sum(J_2k) = 1.
inline long double bessel_j0_miller(long double x)
{
    int start = static_cast<int>(x) + 40 + static_cast<int>(12.0L * std::cbrt(x));
    if (start % 2 != 0)
        ++start;

    long double next = 0.0L;  // J_{k+1}
    long double curr = 1e-30L; // J_k
    long double norm = 0.0L;
    long double j0 = 0.0L;
    for (int k = start; k > 0; --k)
    {
        const long double prev = (2.0L * k / x) * curr - next; // J_{k-1}
        next = curr;
        curr = prev;
        if ((k - 1) % 2 == 0 && k - 1 > 0)
            norm += 2.0L * curr;
        if (std::fabs(curr) > 1e250L)
        {
            curr *= 1e-250L;
            next *= 1e-250L;
            norm *= 1e-250L;
        }
    }
    j0 = curr;
    norm += j0;
    return j0 / norm;
}

// Hankel asymptotic expansion, truncated at its smallest term.
inline long double bessel_j0_asymptotic(long double x)
{
    const long double inv8x = 1.0L / (8.0L * x);
    long double p = 1.0L;
    long double q = 0.0L;
    long double term = 1.0L;
    long double last = 1.0L;
    for (int k = 1; k < 400; ++k)
    {
        const long double odd = 2.0L * k - 1.0L;
        term *= odd * odd * inv8x / static_cast<long double>(k);
        if (std::fabs(term) > last)
            break;
        last = std::fabs(term);
        // term is a_k / x^k; even k feed P, odd k feed Q with alternating signs
        const int r = k % 4;
        if (r == 1)
            q -= term;
        else if (r == 2)
            p -= term;
        else if (r == 3)
            q += term;
        else
            p += term;
        if (last < 1e-24L)
            break;
    }
    const long double chi = x - std::numbers::pi_v<long double> / 4.0L;
    return std::sqrt(2.0L / (std::numbers::pi_v<long double> * x)) *
           (p * std::cos(chi) - q * std::sin(chi));
}

} // namespace detail

/// Zeroth-order Bessel function of the first kind.
///
/// Power series below 12, backward recurrence on [12, 25) and the Hankel
/// asymptotic expansion beyond. Absolute error is below 1e-12 on the real line.
inline double bessel_j0(double x)
{
    const long double ax = std::fabs(static_cast<long double>(x));
    if (ax < 12.0L)
        return static_cast<double>(detail::bessel_j0_series(ax));
    if (ax < 25.0L)
        return static_cast<double>(detail::bessel_j0_miller(ax));
    return static_cast<double>(detail::bessel_j0_asymptotic(ax));
}

} // namespace fama

#endif // FAMA_BESSEL_HPP
