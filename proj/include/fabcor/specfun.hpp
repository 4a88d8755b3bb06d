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

// Self-contained special functions and Gaussian quadrature rules:
//   sinc, Bessel J0, exponentially scaled Bessel I_nu, the generalized
//   Marcum Q function, gamma/log-gamma, rising factorials, and
//   Gauss-Laguerre / Gauss-Legendre rules.
// Everything here is plain double-in/double-out with no external
// dependencies; higher-level modules build on these primitives.

#ifndef FABCOR_SPECFUN_HPP
#define FABCOR_SPECFUN_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "fabcor/errors.hpp"

namespace fabcor
{

namespace detail
{
inline void require_finite(double x, const char *what)
{
    if (!std::isfinite(x))
        throw invalid_input(std::string(what) + " must be finite");
}
} // namespace detail

// sin(x)/x with the removable singularity filled in by its Taylor expansion.
inline double sinc(double x)
{
    detail::require_finite(x, "sinc argument");
    if (std::abs(x) < 1.0e-4)
    {
        double x2 = x * x;
        return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
    }
    return std::sin(x) / x;
}

// Rising factorial a (a+1) ... (a+n-1); empty product for n = 0.
inline double pochhammer(double a, int n)
{
    detail::require_finite(a, "pochhammer base");
    if (n < 0)
        throw invalid_input("pochhammer order must be nonnegative");
    double p = 1.0;
    for (int i = 0; i < n; i++)
        p *= a + i;
    return p;
}

namespace detail
{
// Lanczos approximation, g = 7, 9 coefficients. Relative accuracy ~1e-13
// over the right half plane; the log variant stays accurate for large
// arguments because it never forms the (huge) gamma value itself.
inline constexpr double lanczos_g = 7.0;
inline constexpr double lanczos_coef[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

inline double lanczos_sum(double z) // z already shifted by -1
{
    double a = lanczos_coef[0];
    for (int i = 1; i < 9; i++)
        a += lanczos_coef[i] / (z + i);
    return a;
}
} // namespace detail

// Gamma function for real arguments (poles excluded).
inline double gamma_fn(double x)
{
    detail::require_finite(x, "gamma argument");
    if (x <= 0.0 && x == std::floor(x))
        throw invalid_input("gamma undefined at nonpositive integers");
    if (x < 0.5) // reflection
        return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma_fn(1.0 - x));
    double z = x - 1.0;
    double t = z + detail::lanczos_g + 0.5;
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) * std::exp(-t) *
           detail::lanczos_sum(z);
}

// log(Gamma(x)) for x > 0, safe for large x where gamma_fn would overflow.
inline double log_gamma(double x)
{
    detail::require_finite(x, "log_gamma argument");
    if (x <= 0.0)
        throw invalid_input("log_gamma requires a positive argument");
    if (x < 0.5)
        return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - log_gamma(1.0 - x);
    double z = x - 1.0;
    double t = z + detail::lanczos_g + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t +
           std::log(detail::lanczos_sum(z));
}

// Bessel function of the first kind, order zero.
//
// Two regimes: the ascending power series sum (-x^2/4)^k / (k!)^2 for
// |x| <= 16 (accumulated in long double; the alternating terms peak near
// 2e5 at x = 16, so extended precision keeps the cancellation error well
// below 1e-14), and the Hankel asymptotic expansion beyond, where its
// optimal truncation error is already < 1e-14. Absolute accuracy is
// ~1e-13 or better through |x| ~ 1000.
inline double bessel_j0(double x)
{
    detail::require_finite(x, "bessel_j0 argument");
    const double ax = std::abs(x);
    if (ax <= 16.0)
    {
        const long double q = static_cast<long double>(ax) * ax / 4.0L;
        long double term = 1.0L, sum = 1.0L;
        for (int k = 1; k <= 120; k++)
        {
            term *= -q / (static_cast<long double>(k) * k);
            sum += term;
            if (std::abs(static_cast<double>(term)) < 1.0e-30)
                break;
        }
        return static_cast<double>(sum);
    }

    // Hankel expansion: J0 = sqrt(2/(pi x)) (P cos(x-pi/4) - Q sin(x-pi/4))
    // with u_m = u_{m-1} (2m-1)^2 / (8 m x) feeding P (even m) and Q (odd m).
    const long double z = ax;
    long double u = 1.0L, P = 1.0L, Q = 0.0L, uprev = std::numeric_limits<long double>::max();
    for (int m = 1; m <= 40; m++)
    {
        u *= static_cast<long double>(2 * m - 1) * (2 * m - 1) / (8.0L * m * z);
        if (u >= uprev) // asymptotic tail started to diverge
            break;
        uprev = u;
        const long double s = (((m + 1) >> 1) % 2 == 1) ? -1.0L : 1.0L;
        if (m % 2 == 0)
            P += s * u;
        else
            Q += s * u;
        if (u < 1.0e-20L)
            break;
    }
    const long double chi = z - std::numbers::pi_v<long double> / 4.0L;
    const long double val = std::sqrt(2.0L / (std::numbers::pi_v<long double> * z)) *
                            (P * std::cos(chi) - Q * std::sin(chi));
    return static_cast<double>(val);
}

// Exponentially scaled modified Bessel function e^{-x} I_nu(x) for integer
// nu >= 0 and x >= 0. The ascending series (all terms positive, so no
// cancellation) covers small and moderate x; the large-argument asymptotic
// series takes over once it converges safely (x well past 4 nu^2 / 8).
inline double bessel_i_scaled(int nu, double x)
{
    if (nu < 0)
        throw invalid_input("bessel_i_scaled order must be nonnegative");
    detail::require_finite(x, "bessel_i_scaled argument");
    if (x < 0.0)
        throw invalid_input("bessel_i_scaled argument must be nonnegative");
    if (x == 0.0)
        return nu == 0 ? 1.0 : 0.0;

    const double mu = 4.0 * static_cast<double>(nu) * nu;
    if (x >= 35.0 && x >= 0.5 * mu)
    {
        // e^{-x} I_nu(x) ~ (2 pi x)^{-1/2} sum_m t_m,
        // t_m = t_{m-1} ((2m-1)^2 - 4 nu^2) / (8 m x)
        const long double z = x;
        long double t = 1.0L, sum = 1.0L, tprev = std::numeric_limits<long double>::max();
        for (int m = 1; m <= 60; m++)
        {
            t *= (static_cast<long double>(2 * m - 1) * (2 * m - 1) - mu) / (8.0L * m * z);
            if (std::abs(t) >= tprev)
                break;
            tprev = std::abs(t);
            sum += t;
            if (std::abs(t) < 1.0e-19L * std::abs(sum))
                break;
        }
        return static_cast<double>(sum / std::sqrt(2.0L * std::numbers::pi_v<long double> * z));
    }

    const long double h = static_cast<long double>(x) / 2.0L;
    long double t = (nu == 0) ? 1.0L
                              : std::exp(nu * std::log(h) -
                                         std::lgamma(static_cast<long double>(nu) + 1.0L));
    long double sum = t;
    for (int k = 1; k <= 100000; k++)
    {
        t *= h * h / (static_cast<long double>(k) * (k + nu));
        sum += t;
        if (t < 1.0e-19L * sum)
            break;
    }
    return static_cast<double>(std::exp(std::log(sum) - static_cast<long double>(x)));
}

namespace detail
{
// Regularized upper incomplete gamma Q(s, x) = Gamma(s, x) / Gamma(s).
// Series branch below the diagonal, modified Lentz continued fraction above.
inline double regularized_gamma_q(double s, double x)
{
    if (s <= 0.0)
        throw invalid_input("regularized_gamma_q requires s > 0");
    if (x < 0.0)
        throw invalid_input("regularized_gamma_q requires x >= 0");
    if (x == 0.0)
        return 1.0;
    const double logpre = s * std::log(x) - x - log_gamma(s);
    if (x < s + 1.0)
    {
        double term = 1.0 / s, sum = term;
        for (int n = 1; n < 100000; n++)
        {
            term *= x / (s + n);
            sum += term;
            if (term < sum * 1.0e-17)
                return std::clamp(1.0 - std::exp(logpre) * sum, 0.0, 1.0);
        }
        throw numerical_fault("specfun", "incomplete gamma series failed to converge");
    }
    const double tiny = 1.0e-300;
    double b = x + 1.0 - s, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i < 100000; i++)
    {
        const double an = -static_cast<double>(i) * (i - s);
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
        if (std::abs(del - 1.0) < 1.0e-16)
            return std::clamp(std::exp(logpre) * h, 0.0, 1.0);
    }
    throw numerical_fault("specfun", "incomplete gamma continued fraction failed to converge");
}
} // namespace detail

// Generalized Marcum Q function Q_p(a, b) for integer order p >= 1: the
// survival function of a noncentral chi-square variable with 2p degrees of
// freedom and noncentrality a^2, evaluated at b^2.
//
// Computed through its Poisson mixture of central chi-square survivals,
//   Q_p(a,b) = sum_k pois(k; a^2/2) Q(p + k, b^2/2),
// summed outward from the Poisson mode with log-domain start values and
// rigorous tail bounds (truncation below 1e-17 of the running sum). All
// terms are positive, so there is no cancellation and the result keeps
// close-to-full relative precision down to the underflow floor. For
// extreme noncentrality (a^2/2 > 1e8, far outside any regime exercised
// here) it falls back to the erfc-based normal approximation.
inline double marcum_q(int p, double a, double b)
{
    if (p < 1)
        throw invalid_input("marcum_q order must be a positive integer");
    detail::require_finite(a, "marcum_q noncentrality");
    detail::require_finite(b, "marcum_q threshold");
    if (a < 0.0 || b < 0.0)
        throw invalid_input("marcum_q arguments must be nonnegative");
    if (b == 0.0)
        return 1.0;
    const double y = 0.5 * b * b;
    if (a == 0.0)
        return detail::regularized_gamma_q(static_cast<double>(p), y);
    const double lambda = 0.5 * a * a;
    if (lambda > 1.0e8)
        return std::clamp(0.5 * std::erfc((b - a) / std::numbers::sqrt2), 0.0, 1.0);

    const long long k0 = static_cast<long long>(std::floor(lambda));
    const double pois0 =
        std::exp(k0 * std::log(lambda) - lambda - log_gamma(static_cast<double>(k0) + 1.0));
    const double q0 = detail::regularized_gamma_q(static_cast<double>(p + k0), y);
    // g(n) = e^{-y} y^n / n! steps the chi-square survival between orders:
    // Q(n+1, y) = Q(n, y) + g(n).
    const double g_at_pk0 =
        std::exp((p + k0) * std::log(y) - y - log_gamma(static_cast<double>(p + k0) + 1.0));

    double sum = pois0 * q0;
    const double eps = 1.0e-17;

    // upward from the mode
    {
        bool done = false;
        double pk = pois0, qk = q0, g = g_at_pk0;
        for (long long k = k0 + 1; k < k0 + 8000000LL; k++)
        {
            pk *= lambda / static_cast<double>(k);
            qk = std::min(qk + g, 1.0);
            g *= y / static_cast<double>(p + k);
            sum += pk * qk;
            if (static_cast<double>(k) + 1.0 > lambda)
            {
                // remaining mass <= pk r/(1-r); the absolute floor keeps the
                // bound effective when the sum underflows to zero outright
                const double r = lambda / (static_cast<double>(k) + 1.0);
                if (pk * r / (1.0 - r) < eps * sum + 1.0e-290)
                {
                    done = true;
                    break;
                }
            }
        }
        if (!done)
            throw numerical_fault("specfun", "marcum_q upward sweep failed to converge");
    }
    // downward from the mode
    {
        bool done = k0 == 0;
        double pk = pois0, qk = q0;
        double g = (k0 > 0) ? g_at_pk0 * static_cast<double>(p + k0) / y : 0.0;
        for (long long k = k0 - 1; k >= 0; k--)
        {
            pk *= static_cast<double>(k + 1) / lambda;
            qk = std::max(qk - g, 0.0);
            g *= static_cast<double>(p + k) / y;
            sum += pk * qk;
            if (qk <= 0.0 || k == 0)
            {
                done = true;
                break;
            }
            const double r = static_cast<double>(k) / lambda;
            if (pk * qk * r / (1.0 - r) < eps * sum + 1.0e-290)
            {
                done = true;
                break;
            }
        }
        if (!done)
            throw numerical_fault("specfun", "marcum_q downward sweep failed to converge");
    }
    return std::clamp(sum, 0.0, 1.0);
}

// A Gaussian quadrature rule: integral of f(x) w(x) ~ sum_i weights[i] f(nodes[i]).
struct QuadratureRule
{
    int order = 0;               // number of nodes
    double alpha = 0.0;          // weight-function exponent (Laguerre rules)
    std::vector<double> nodes;   // ascending
    std::vector<double> weights; // positive
};

namespace detail
{
// Eigenvalues and first eigenvector components of a symmetric tridiagonal
// matrix by the implicit-shift QL iteration. d holds the diagonal (returns
// the eigenvalues), e the subdiagonal in e[0..n-2]; z must come in as the
// first coordinate basis vector and returns the first component of each
// normalized eigenvector. Standard Golub-Welsch workhorse.
inline void tridiag_eigen_first(std::vector<double> &d, std::vector<double> &e,
                                std::vector<double> &z)
{
    const int n = static_cast<int>(d.size());
    if (n == 0)
        return;
    e.resize(n, 0.0); // e[n-1] used as scratch
    for (int l = 0; l < n; l++)
    {
        int iter = 0;
        int m;
        do
        {
            for (m = l; m < n - 1; m++)
            {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd)
                    break;
            }
            if (m != l)
            {
                if (iter++ == 60)
                    throw numerical_fault("specfun", "tridiagonal eigensolver failed to converge");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, pshift = 0.0;
                bool underflow = false;
                for (int i = m - 1; i >= l; i--)
                {
                    double f = s * e[i];
                    const double bb = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) // recover from a vanishing rotation
                    {
                        d[i + 1] -= pshift;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - pshift;
                    r = (d[i] - g) * s + 2.0 * c * bb;
                    pshift = s * r;
                    d[i + 1] = g + pshift;
                    g = c * r - bb;
                    f = z[i + 1];
                    z[i + 1] = s * z[i] + c * f;
                    z[i] = c * z[i] - s * f;
                }
                if (underflow)
                    continue;
                d[l] -= pshift;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}
} // namespace detail

// Generalized Gauss-Laguerre rule for the weight x^alpha e^{-x} on (0, inf),
// exact for polynomials up to degree 2m - 1. Nodes and weights come from the
// Golub-Welsch eigendecomposition of the Jacobi matrix (weights as the
// squared first eigenvector components scaled by Gamma(alpha + 1)), which
// is well conditioned at every order used here.
inline QuadratureRule gauss_laguerre(int m, double alpha)
{
    if (m < 1)
        throw invalid_input("gauss_laguerre order must be >= 1");
    detail::require_finite(alpha, "gauss_laguerre alpha");
    if (alpha <= -1.0)
        throw invalid_input("gauss_laguerre requires alpha > -1");

    std::vector<double> d(m), e(m, 0.0), z(m, 0.0);
    for (int i = 0; i < m; i++)
        d[i] = 2.0 * i + alpha + 1.0;
    for (int i = 0; i + 1 < m; i++)
        e[i] = std::sqrt((i + 1.0) * (i + 1.0 + alpha));
    z[0] = 1.0;
    detail::tridiag_eigen_first(d, e, z);

    std::vector<int> idx(m);
    for (int i = 0; i < m; i++)
        idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int i, int j) { return d[i] < d[j]; });

    QuadratureRule rule;
    rule.order = m;
    rule.alpha = alpha;
    rule.nodes.resize(m);
    rule.weights.resize(m);
    const double mass = gamma_fn(alpha + 1.0);
    for (int i = 0; i < m; i++)
    {
        rule.nodes[i] = d[idx[i]];
        rule.weights[i] = mass * z[idx[i]] * z[idx[i]];
    }
    if (rule.nodes.front() <= 0.0)
        throw numerical_fault("specfun", "gauss_laguerre produced a nonpositive node");
    return rule;
}

// Gauss-Legendre rule on [-1, 1] (weight 1), by Newton iteration on the
// Legendre recurrence. Used for the direction-of-arrival averaging
// integrals in the correlation builders.
inline QuadratureRule gauss_legendre(int m)
{
    if (m < 1)
        throw invalid_input("gauss_legendre order must be >= 1");
    QuadratureRule rule;
    rule.order = m;
    rule.alpha = 0.0;
    rule.nodes.resize(m);
    rule.weights.resize(m);
    const int half = (m + 1) / 2;
    for (int i = 0; i < half; i++)
    {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; it++)
        {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= m; k++)
            {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = m * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1.0e-15)
                break;
        }
        rule.nodes[i] = -x; // fill ascending from the left edge
        rule.nodes[m - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[m - 1 - i] = w;
    }
    return rule;
}

} // namespace fabcor

#endif
