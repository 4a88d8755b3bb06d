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

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <thread>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "fabcor/correlation.hpp"
#include "fabcor/errors.hpp"
#include "fabcor/rng.hpp"
#include "fabcor/spectral.hpp"

namespace fabcor
{

// One Monte Carlo experiment: sample U correlated Rayleigh channels over the
// N ports of sigma, select the best port, count outages.
struct SimConfig
{
    long trials = 100000;     // total across all partitions
    std::uint64_t seed = 1;   // generator family
    CorrelationMatrix sigma;  // true or block-approximated covariance
    int users = 2;            // U; 1 selects the max-power single-user rule
    double gamma = 1.0;       // SIR threshold (SNR-like when U = 1)
    int partitions = 8;       // deterministic substream count

    void validate() const
    {
        if (trials < 1)
            throw invalid_input("simulation needs at least one trial");
        if (users < 1)
            throw invalid_input("simulation needs at least one user");
        if (!(gamma > 0.0))
            throw invalid_input("gamma must be positive");
        if (partitions < 1)
            throw invalid_input("simulation needs at least one partition");
        if (sigma.n < 1)
            throw invalid_input("simulation needs a correlation matrix");
    }
};

struct OutageEstimate
{
    double p_hat = 0.0;   // outage fraction
    long trials = 0;      // sample size behind the estimate
    double half_ci95 = 0.0; // 1.96 sqrt(p(1-p)/trials)
};

// Draw one channel vector per user into h: h_u = factor * z_u with z_u a
// vector of i.i.d. standard complex Gaussians (variance 1/2 per real
// component). Users are drawn in index order, ports in index order within
// each user, so the stream layout is pinned.
inline void sample_channels(const Eigen::MatrixXcd &factor, int users, Xoshiro256pp &rng,
                            Eigen::VectorXcd &z, std::vector<Eigen::VectorXcd> &h)
{
    const Eigen::Index n = factor.rows();
    z.resize(n);
    h.resize(static_cast<std::size_t>(users));
    for (int u = 0; u < users; u++)
    {
        for (Eigen::Index i = 0; i < n; i++)
            z[i] = rng.standard_complex_normal();
        h[static_cast<std::size_t>(u)].noalias() = factor * z;
    }
}

// Convenience overload factoring sigma on the fly (tests and one-shot use).
inline std::vector<Eigen::VectorXcd> sample_channels(const CorrelationMatrix &sigma, int users,
                                                     Xoshiro256pp &rng)
{
    const Eigen::MatrixXcd factor = std::visit(
        [](const auto &m) { return Eigen::MatrixXcd(m.template cast<std::complex<double>>()); },
        matrix_sqrt_psd(sigma));
    Eigen::VectorXcd z;
    std::vector<Eigen::VectorXcd> h;
    sample_channels(factor, users, rng, z, h);
    return h;
}

namespace detail
{
// Best-port statistic of one trial: the maximum SIR over ports for U >= 2
// (lowest port index wins ties), or the maximum port power for U = 1. The
// single-user value is reported with unit variance per real component
// (twice the sampled |h|^2) to match the analytic normalization.
inline double best_port_statistic(const std::vector<Eigen::VectorXcd> &h, int users)
{
    const Eigen::Index n = h[0].size();
    double best = -1.0;
    if (users == 1)
    {
        for (Eigen::Index i = 0; i < n; i++)
        {
            const double power = 2.0 * std::norm(h[0][i]);
            if (power > best)
                best = power;
        }
        return best;
    }
    for (Eigen::Index i = 0; i < n; i++)
    {
        double intf = 0.0;
        for (int u = 1; u < users; u++)
            intf += std::norm(h[static_cast<std::size_t>(u)][i]);
        const double sir = std::norm(h[0][i]) / intf;
        if (sir > best)
            best = sir;
    }
    return best;
}
} // namespace detail

// Outage estimates for a batch of thresholds from one set of draws: the
// selected port never depends on gamma, so a whole gamma sweep can reuse
// each trial. Trials are split across cfg.partitions deterministic
// substreams (seed, partition-index); per-partition counts are integers
// merged in partition order, so the result is bit-exact for a fixed
// partition count no matter how the partitions are scheduled.
inline std::vector<OutageEstimate> empirical_pout_curve(const SimConfig &cfg,
                                                        const std::vector<double> &gammas)
{
    cfg.validate();
    for (double g : gammas)
        if (!(g > 0.0))
            throw invalid_input("gamma must be positive");
    if (gammas.empty())
        return {};

    const Eigen::MatrixXcd factor = std::visit(
        [](const auto &m) { return Eigen::MatrixXcd(m.template cast<std::complex<double>>()); },
        matrix_sqrt_psd(cfg.sigma));

    const int parts = cfg.partitions;
    const long base = cfg.trials / parts;
    const long rem = cfg.trials % parts;
    std::vector<std::vector<long>> counts(static_cast<std::size_t>(parts),
                                          std::vector<long>(gammas.size(), 0));

    auto run_partition = [&](int p)
    {
        const long todo = base + (p < rem ? 1 : 0);
        Xoshiro256pp rng(cfg.seed, static_cast<std::uint64_t>(p));
        Eigen::VectorXcd z;
        std::vector<Eigen::VectorXcd> h;
        std::vector<long> &slot = counts[static_cast<std::size_t>(p)];
        for (long t = 0; t < todo; t++)
        {
            sample_channels(factor, cfg.users, rng, z, h);
            const double best = detail::best_port_statistic(h, cfg.users);
            for (std::size_t gi = 0; gi < gammas.size(); gi++)
                if (best < gammas[gi])
                    slot[gi]++;
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(parts));
    for (int p = 0; p < parts; p++)
        pool.emplace_back(run_partition, p);
    for (std::thread &worker : pool)
        worker.join();

    std::vector<OutageEstimate> out(gammas.size());
    for (std::size_t gi = 0; gi < gammas.size(); gi++)
    {
        long fails = 0;
        for (int p = 0; p < parts; p++)
            fails += counts[static_cast<std::size_t>(p)][gi];
        const double p_hat = static_cast<double>(fails) / static_cast<double>(cfg.trials);
        out[gi].p_hat = p_hat;
        out[gi].trials = cfg.trials;
        out[gi].half_ci95 =
            1.96 * std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(cfg.trials));
    }
    return out;
}

inline OutageEstimate empirical_pout(const SimConfig &cfg)
{
    return empirical_pout_curve(cfg, {cfg.gamma}).front();
}

} // namespace fabcor
