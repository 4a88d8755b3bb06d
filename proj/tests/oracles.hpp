// SPDX-License-Identifier: Apache-2.0
//
// fabcor c++ library for fluid-antenna correlation modelling and outage analysis
// Copyright (C) 2026 the fabcor authors
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

// Reference implementations used only by the test suite. These deliberately
// take the slow, direct route (raw series in extended precision, adaptive
// subdivision, brute-force search) so that they share no code path with the
// library routines they check.

#ifndef FABCOR_TESTS_ORACLES_HPP
#define FABCOR_TESTS_ORACLES_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

namespace oracles
{

#if defined(__SIZEOF_FLOAT128__)
using wide = __float128; // quad precision keeps raw series exact to ~1e-33
#else
using wide = long double;
#endif

// Truncated ascending power series for J0: sum_k (-x^2/4)^k / (k!)^2.
// Accumulated in wide precision so the alternating-term cancellation
// (condition number ~1e8 at x = 20) costs nothing.
inline double j0_series(double x, int terms = 60)
{
    const wide q = static_cast<wide>(x) * static_cast<wide>(x) / static_cast<wide>(4);
    wide term = 1, sum = 1;
    for (int k = 1; k < terms; k++)
    {
        term *= -q / (static_cast<wide>(k) * static_cast<wide>(k));
        sum += term;
    }
    return static_cast<double>(sum);
}

// Smallest positive root of the J0 series, by plain bisection.
inline double j0_first_zero()
{
    double lo = 2.0, hi = 3.0;
    for (int i = 0; i < 200; i++)
    {
        const double mid = 0.5 * (lo + hi);
        if (j0_series(lo) * j0_series(mid) <= 0.0)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

// Ascending series for the scaled modified Bessel function e^{-x} I_nu(x).
inline double i_scaled_series(int nu, double x)
{
    if (x == 0.0)
        return nu == 0 ? 1.0 : 0.0;
    const long double h = static_cast<long double>(x) / 2.0L;
    long double t = (nu == 0) ? 1.0L
                              : std::exp(nu * std::log(h) -
                                         std::lgamma(static_cast<long double>(nu) + 1.0L));
    long double sum = t;
    for (int k = 1; k < 200000; k++)
    {
        t *= h * h / (static_cast<long double>(k) * (k + nu));
        sum += t;
        if (t < 1.0e-25L * sum)
            break;
    }
    return static_cast<double>(sum * std::exp(-static_cast<long double>(x)));
}

// Marcum Q_p(a, b) as the Poisson-weighted sum of central chi-square
// survivals, summed straight up from k = 0 in long double with at least
// 200 terms. Valid comfortably through a, b <= 50.
inline double marcum_series(int p, double a, double b)
{
    if (b <= 0.0)
        return 1.0;
    const long double lam = 0.5L * static_cast<long double>(a) * a;
    const long double y = 0.5L * static_cast<long double>(b) * b;

    // survival of a central chi-square with 2p dof at 2y, and the next
    // increment g = e^{-y} y^p / p!
    long double t = std::exp(-y), q = t;
    for (int i = 1; i < p; i++)
    {
        t *= y / i;
        q += t;
    }
    long double g = t * y / p;

    long double pois = std::exp(-lam);
    long double cum = pois;
    long double sum = pois * q;
    for (long long k = 1; k < 50000000LL; k++)
    {
        pois *= lam / k;
        q += g;
        if (q > 1.0L)
            q = 1.0L;
        g *= y / (p + k);
        sum += pois * q;
        cum += pois;
        if (k < 200)
            continue;
        const long double floor_ = 1.0e-21L * (sum > 0 ? sum : 1.0L);
        if (1.0L - cum < floor_)
            break;
        if (static_cast<long double>(k) + 1.0L > lam)
        {
            // geometric bound on the remaining Poisson mass (survivals <= 1)
            const long double r = lam / (static_cast<long double>(k) + 1.0L);
            if (pois * r / (1.0L - r) < floor_)
                break;
        }
    }
    return static_cast<double>(sum);
}

// Recursive adaptive Simpson integration.
namespace detail
{
inline double simpson(const std::function<double(double)> &f, double a, double fa, double b,
                      double fb, double m, double fm)
{
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adapt(const std::function<double(double)> &f, double a, double fa, double b,
                    double fb, double m, double fm, double whole, double tol, int depth)
{
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(f, a, fa, m, fm, lm, flm);
    const double right = simpson(f, m, fm, b, fb, rm, frm);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adapt(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adapt(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}
} // namespace detail

inline double adaptive_simpson(const std::function<double(double)> &f, double a, double b,
                               double tol, int maxdepth = 40)
{
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    const double whole = detail::simpson(f, a, fa, b, fb, m, fm);
    return detail::adapt(f, a, fa, b, fb, m, fm, whole, tol, maxdepth);
}

} // namespace oracles

#endif
