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

// Analytic outage probability of port-selection multiple access under the
// block constant-correlation channel model.
//
// Within a block of L equally correlated ports, conditioning on the
// per-user common components reduces each port's SIR to a ratio of
// independent noncentral chi-square variables. The per-port failure
// probability of that conditional law is g_function; raising it to L and
// integrating the conditioning variables (a 2-dof chi-square r for the
// desired user, a 2(U-1)-dof chi-square rt for the interferers) gives the
// per-block outage factor, evaluated with Gauss-Laguerre rules. Blocks
// multiply because the model is block-diagonal.

#ifndef FABCOR_OUTAGE_HPP
#define FABCOR_OUTAGE_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fabcor/blockmodel.hpp"
#include "fabcor/errors.hpp"
#include "fabcor/specfun.hpp"

namespace fabcor
{

struct FamaScenario
{
    int users = 2;    // U; 1 routes to the single-user formula
    double gamma = 1; // SIR threshold (SNR threshold when users == 1), linear
    BlockSpec spec;
    int quad_m = 30;  // nodes for the desired-user integral (weight e^-x)
    int quad_mt = 30; // nodes for the interferer integral (weight x^(U-2) e^-x)
};

struct OutageCurve
{
    enum class Method
    {
        Exact,            // adaptive integration of the block formula
        Quadrature,       // Gauss-Laguerre evaluation of the block formula
        Simplified,       // step-function threshold approximation
        IID,              // independent-block closed form
        ConstantBaseline, // single all-port block at the average correlation
        MonteCarlo,
        EigCount, // relevant-eigenvalue count (spectral occupancy curves)
        Gain      // per-block outage gain over a single antenna
    };

    std::string axis_name;
    std::vector<double> axis;
    Method method = Method::Quadrature;
    std::vector<double> values;
    std::vector<double> ci95; // zero for analytic methods
};

inline const char *method_name(OutageCurve::Method m)
{
    switch (m)
    {
    case OutageCurve::Method::Exact: return "exact";
    case OutageCurve::Method::Quadrature: return "quadrature";
    case OutageCurve::Method::Simplified: return "simplified";
    case OutageCurve::Method::IID: return "iid";
    case OutageCurve::Method::ConstantBaseline: return "baseline";
    case OutageCurve::Method::MonteCarlo: return "mc";
    case OutageCurve::Method::EigCount: return "eig_count";
    case OutageCurve::Method::Gain: return "gain";
    }
    return "unknown";
}

namespace detail
{
// clamp bookkeeping: events where the conditional failure probability left
// [0,1] by more than 1e-12 before clamping (should stay zero in sane ranges)
inline std::atomic<long long> g_clamp_events{0};
} // namespace detail

inline long long g_clamp_count() { return detail::g_clamp_events.load(); }
inline void g_clamp_reset() { detail::g_clamp_events.store(0); }

// Conditional per-port failure probability P(SIR < gamma | r, rt) inside a
// block with off-diagonal correlation mu2:
//   Q_{U-1}(a, b) - (gamma+1)^{-(U-1)} e^{-c} * double sum of Pochhammer /
//   power / scaled-Bessel terms,
// with a^2 = mu2 gamma rt / ((1-mu2)(gamma+1)), b^2 = mu2 r / (same),
// c = mu2 (gamma rt + r) / (2 (1-mu2)(gamma+1)) and Bessel argument
// z = mu2 sqrt(gamma r rt) / ((1-mu2)(gamma+1)). Since c >= z, each
// exponential is paired with a scaled Bessel factor so no intermediate
// value overflows; at z -> 0 the Bessel limit (z/2)^nu / nu! is substituted
// directly, which also removes the 0/0 of the (r/rt)^{nu/2} ratio.
inline double g_function(double gamma, double r, double rt, double mu2, int users)
{
    if (users < 2)
        throw invalid_input("g_function needs users >= 2");
    detail::require_finite(gamma, "g_function gamma");
    if (!(gamma > 0.0))
        throw invalid_input("g_function gamma must be positive");
    if (r < 0.0 || rt < 0.0)
        throw invalid_input("g_function conditioning variables must be nonnegative");
    if (!(mu2 >= 0.0) || mu2 >= 1.0)
        throw invalid_input("g_function mu2 must lie in [0, 1)");

    const double denom = (1.0 - mu2) * (gamma + 1.0);
    const double a = std::sqrt(mu2 * gamma * rt / denom);
    const double b = std::sqrt(mu2 * r / denom);
    double g = marcum_q(users - 1, a, b);

    const double z = mu2 * std::sqrt(gamma * r * rt) / denom;
    const double root_gap = std::sqrt(gamma * rt) - std::sqrt(r);
    const double cmz = mu2 * root_gap * root_gap / (2.0 * denom); // c - z >= 0

    double total = 0.0;
    for (int k = 0; k <= users - 2; k++)
        for (int j = 0; j <= users - 2 - k; j++)
        {
            const int nu = j + k;
            double paired; // (r/rt)^{nu/2} I_nu(z) e^{-c}
            if (z < 1.0e-6)
                paired = std::pow(mu2 * std::sqrt(gamma) * r / (2.0 * denom), nu) /
                         gamma_fn(nu + 1.0) * std::exp(-(cmz + z));
            else
                paired = std::exp(0.5 * nu * (std::log(r) - std::log(rt)) - cmz +
                                  std::log(bessel_i_scaled(nu, z)));
            total += pochhammer(users - nu - 1.0, j) / gamma_fn(j + 1.0) *
                     std::pow(gamma + 1.0, k) * std::pow(gamma, 0.5 * (j - k)) * paired;
        }
    g -= std::pow(gamma + 1.0, -(users - 1.0)) * total;

    if (g < -1.0e-12 || g > 1.0 + 1.0e-12)
        detail::g_clamp_events.fetch_add(1, std::memory_order_relaxed);
    return std::clamp(g, 0.0, 1.0);
}

namespace detail
{
// Conditional failure probabilities at all quadrature node pairs; shared by
// every block with the same mu2.
inline Eigen::MatrixXd g_table(double gamma, double mu2, int users, const QuadratureRule &rm,
                               const QuadratureRule &rmt)
{
    Eigen::MatrixXd tab(rm.order, rmt.order);
    for (int mt = 0; mt < rmt.order; mt++)
        for (int m = 0; m < rm.order; m++)
            tab(m, mt) = g_function(gamma, 2.0 * rm.nodes[m], 2.0 * rmt.nodes[mt], mu2, users);
    return tab;
}

inline double powl_clamped(double g, int l)
{
    // [g]^l with g clamped into (0, 1]; log-domain keeps deep tails finite
    return std::exp(l * std::log(std::clamp(g, 1.0e-300, 1.0)));
}
} // namespace detail

// Outage probability of the block model by tensor Gauss-Laguerre quadrature:
//   prod_b (1/Gamma(U-1)) sum_m sum_mt w_m wt_mt [G(gamma; 2 x_m, 2 xt_mt)]^{L_b}.
inline double pout_quadrature(const FamaScenario &s)
{
    if (s.users < 2)
        throw invalid_input("multi-user outage needs users >= 2");
    if (!(s.gamma > 0.0))
        throw invalid_input("gamma must be positive");
    s.spec.validate();

    const QuadratureRule rm = gauss_laguerre(s.quad_m, 0.0);
    const QuadratureRule rmt = gauss_laguerre(s.quad_mt, s.users - 2.0);
    const double norm = 1.0 / gamma_fn(s.users - 1.0);

    std::map<double, Eigen::MatrixXd> tables; // one per distinct mu2
    double prod = 1.0;
    for (std::size_t bi = 0; bi < s.spec.sizes.size(); bi++)
    {
        const double mu2 = s.spec.mu2[bi];
        auto it = tables.find(mu2);
        if (it == tables.end())
            it = tables.emplace(mu2, detail::g_table(s.gamma, mu2, s.users, rm, rmt)).first;
        const Eigen::MatrixXd &tab = it->second;

        double acc = 0.0;
        for (int mt = 0; mt < rmt.order; mt++)
        {
            double row = 0.0;
            for (int m = 0; m < rm.order; m++)
                row += rm.weights[m] * detail::powl_clamped(tab(m, mt), s.spec.sizes[bi]);
            acc += rmt.weights[mt] * row;
        }
        prod *= std::clamp(norm * acc, 0.0, 1.0);
    }
    return prod;
}

namespace detail
{
// counts pout_simplified calls with any block below the mu2 range where the
// step-function approximation is justified
inline std::atomic<long long> simplified_range_events{0};
} // namespace detail

inline long long simplified_range_count() { return detail::simplified_range_events.load(); }
inline void simplified_range_reset() { detail::simplified_range_events.store(0); }

// Step-function threshold of the conditional failure: the value of r at
// which [G]^L crosses 1/2, from a first-order expansion of the Marcum-Q
// saddle condition. Negative pre-square roots clamp to zero (the threshold
// is an integration limit in r >= 0).
inline double delta_threshold(double rt, double gamma, int users, int l, double mu2)
{
    if (!(mu2 > 0.0) || mu2 >= 1.0)
        throw invalid_input("threshold needs mu2 in (0, 1)");
    if (users < 2 || l < 1 || !(gamma > 0.0) || !(rt >= 0.0))
        throw invalid_input("threshold arguments out of range");

    const double sqrt2pi = std::sqrt(2.0 * std::numbers::pi);
    const double um = users - 1.5;
    const double sgrt = std::sqrt(gamma * rt);
    const double num =
        um * std::sqrt((1.0 + gamma) * (1.0 - mu2) / mu2) - (l - 1) * sgrt / sqrt2pi;
    const double den =
        (l - 1) * um / sqrt2pi + std::sqrt(mu2 * gamma * rt / ((1.0 - mu2) * (1.0 + gamma)));
    if (den <= 0.0) // rt == 0 with l == 1
        return 0.0;
    const double inner = sgrt + num / den;
    return inner > 0.0 ? inner * inner : 0.0;
}

// Per-block gain of port selection over one independent antenna:
//   (1/Gamma(U-1)) sum_mt wt_mt exp(-delta(2 xt_mt)/2) - (gamma+1)^{-(U-1)}.
inline double delta_pout_block(double gamma, int users, int l, double mu2, int quad_mt = 30)
{
    if (users < 2)
        throw invalid_input("delta_pout_block needs users >= 2");
    const QuadratureRule rmt = gauss_laguerre(quad_mt, users - 2.0);
    double acc = 0.0;
    for (int mt = 0; mt < rmt.order; mt++)
        acc += rmt.weights[mt] *
               std::exp(-0.5 * delta_threshold(2.0 * rmt.nodes[mt], gamma, users, l, mu2));
    return acc / gamma_fn(users - 1.0) - std::pow(gamma + 1.0, -(users - 1.0));
}

// Simplified outage: prod_b [1 - (1/Gamma(U-1)) sum_mt wt_mt e^{-delta_b/2}],
// the step-function approximation of the block formula (accurate for mu2
// near 1 and sizable blocks).
inline double pout_simplified(const FamaScenario &s)
{
    if (s.users < 2)
        throw invalid_input("multi-user outage needs users >= 2");
    if (!(s.gamma > 0.0))
        throw invalid_input("gamma must be positive");
    s.spec.validate();

    const QuadratureRule rmt = gauss_laguerre(s.quad_mt, s.users - 2.0);
    const double norm = 1.0 / gamma_fn(s.users - 1.0);

    double prod = 1.0;
    for (std::size_t bi = 0; bi < s.spec.sizes.size(); bi++)
    {
        const double mu2 = s.spec.mu2[bi];
        if (mu2 < 0.9)
            detail::simplified_range_events.fetch_add(1, std::memory_order_relaxed);
        double acc = 0.0;
        for (int mt = 0; mt < rmt.order; mt++)
            acc += rmt.weights[mt] *
                   std::exp(-0.5 * delta_threshold(2.0 * rmt.nodes[mt], s.gamma, s.users,
                                                   s.spec.sizes[bi], mu2));
        prod *= std::clamp(1.0 - norm * acc, 0.0, 1.0);
    }
    return prod;
}

// Closed-form outage of B independent antennas.
inline double pout_iid(double gamma, int users, int b)
{
    if (users < 2)
        throw invalid_input("pout_iid needs users >= 2");
    if (b < 1)
        throw invalid_input("pout_iid needs at least one antenna");
    if (!(gamma > 0.0))
        throw invalid_input("gamma must be positive");
    return std::pow(1.0 - std::pow(gamma + 1.0, -(users - 1.0)), b);
}

// Single-user outage (gamma is an SNR threshold; no interference). Each
// channel component is a unit-variance real Gaussian (E|h|^2 = 2), so an
// isolated port fails with probability 1 - e^{-gamma/2}:
//   prod_b sum_m w_m [1 - Q_1(sqrt(2 mu2 x_m/(1-mu2)), sqrt(gamma/(1-mu2)))]^{L_b}.
inline double pout_single_user(double gamma, const BlockSpec &spec, int quad_m = 30)
{
    if (!(gamma > 0.0))
        throw invalid_input("gamma must be positive");
    spec.validate();
    for (double m : spec.mu2)
        if (m >= 1.0)
            throw invalid_input("single-user outage needs mu2 < 1");

    const QuadratureRule rm = gauss_laguerre(quad_m, 0.0);
    double prod = 1.0;
    for (std::size_t bi = 0; bi < spec.sizes.size(); bi++)
    {
        const double mu2 = spec.mu2[bi];
        // gamma thresholds the raw port power |h|^2 with per-component
        // unit-variance Gaussians (E|h|^2 = 2), so an isolated port fails
        // with probability 1 - exp(-gamma/2)
        const double thr = std::sqrt(gamma / (1.0 - mu2));
        double acc = 0.0;
        for (int m = 0; m < rm.order; m++)
        {
            const double fail =
                1.0 - marcum_q(1, std::sqrt(2.0 * mu2 * rm.nodes[m] / (1.0 - mu2)), thr);
            acc += rm.weights[m] * detail::powl_clamped(fail, spec.sizes[bi]);
        }
        prod *= std::clamp(acc, 0.0, 1.0);
    }
    return prod;
}

// Single-block baseline at the aperture-average correlation.
inline double pout_constant_baseline(double gamma, int users, int n, double mu2_avg)
{
    if (n < 1)
        throw invalid_input("baseline needs at least one port");
    FamaScenario s;
    s.users = users;
    s.gamma = gamma;
    s.spec = BlockSpec::uniform({n}, mu2_avg);
    return pout_quadrature(s);
}

} // namespace fabcor

#endif
