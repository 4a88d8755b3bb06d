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

// Block-diagonal constant-correlation approximations. A block of size L
// with off-diagonal mu^2 has the closed-form spectrum
//   { (L-1) mu^2 + 1 }  union  { 1 - mu^2, multiplicity L-1 },
// so block sizes can be fitted to the dominant eigenvalues of a target
// correlation matrix (spectrum-matching sweep) or spread evenly.

#ifndef FABCOR_BLOCKMODEL_HPP
#define FABCOR_BLOCKMODEL_HPP

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fabcor/correlation.hpp"
#include "fabcor/errors.hpp"

namespace fabcor
{

struct BlockSpec
{
    std::vector<int> sizes;  // L_1 .. L_B, each >= 1
    std::vector<double> mu2; // per-block off-diagonal value in [0, 1]

    int b_count() const { return static_cast<int>(sizes.size()); }

    int total() const
    {
        int t = 0;
        for (int s : sizes)
            t += s;
        return t;
    }

    void validate() const
    {
        if (sizes.empty())
            throw invalid_input("block spec needs at least one block");
        if (mu2.size() != sizes.size())
            throw invalid_input("block spec sizes and mu2 lists must match");
        for (int s : sizes)
            if (s < 1)
                throw invalid_input("block sizes must be positive");
        for (double m : mu2)
            if (!(m >= 0.0) || !(m <= 1.0))
                throw invalid_input("block mu2 values must lie in [0, 1]");
    }

    static BlockSpec uniform(std::vector<int> sizes_, double mu2_)
    {
        BlockSpec s;
        s.sizes = std::move(sizes_);
        s.mu2.assign(s.sizes.size(), mu2_);
        s.validate();
        return s;
    }

    // one-line form "B; L_1,...,L_B; mu2[,mu2_2,...]"
    std::string to_line() const
    {
        std::string out = std::to_string(b_count()) + "; ";
        for (std::size_t i = 0; i < sizes.size(); i++)
            out += (i ? "," : "") + std::to_string(sizes[i]);
        out += "; ";
        bool same = true;
        for (double m : mu2)
            same = same && (m == mu2[0]);
        char buf[32];
        const std::size_t count = same ? 1 : mu2.size();
        for (std::size_t i = 0; i < count; i++)
        {
            std::snprintf(buf, sizeof(buf), "%.12g", mu2[i]);
            out += (i ? "," : "") + std::string(buf);
        }
        return out;
    }
};

// Closed-form spectrum of one constant-correlation block.
inline std::vector<double> block_eigenvalues(int l, double mu2)
{
    if (l < 1)
        throw invalid_input("block size must be positive");
    if (!(mu2 >= 0.0) || !(mu2 <= 1.0))
        throw invalid_input("mu2 must lie in [0, 1]");
    std::vector<double> ev;
    ev.reserve(l);
    ev.push_back((l - 1) * mu2 + 1.0);
    for (int i = 1; i < l; i++)
        ev.push_back(1.0 - mu2);
    return ev;
}

// Spectrum-matching block sizing: round-robin over the dominant eigenvalues,
// growing each block by one port per sweep and retiring it as soon as its
// closed-form top eigenvalue stops improving, i.e. when
//   |(L_b - 1) mu^2 + 1 - rho_b| <= |L_b mu^2 + 1 - rho_b|.
// The sweep halts the moment all N ports are assigned; if every block
// retires while ports remain, the leftovers go to block 1 (the block of
// the largest eigenvalue) so that the sizes always sum to N.
inline BlockSpec algorithm1(const std::vector<double> &dominant, int n, double mu2)
{
    if (dominant.empty())
        throw invalid_input("spectrum-matching needs at least one dominant eigenvalue");
    if (n < 1)
        throw invalid_input("port count must be positive");
    if (!(mu2 > 0.0) || !(mu2 < 1.0))
        throw invalid_input("mu2 must lie in (0, 1)");
    const int b = static_cast<int>(dominant.size());
    if (b > n)
        throw invalid_input("more dominant eigenvalues than ports");
    for (int i = 1; i < b; i++)
        if (dominant[i] > dominant[i - 1])
            throw invalid_input("dominant eigenvalues must be sorted descending");

    std::vector<int> sizes(b, 0);
    std::vector<bool> active(b, true);
    int assigned = 0, remaining = b;
    while (assigned < n && remaining > 0)
    {
        for (int i = 0; i < b && assigned < n; i++)
        {
            if (!active[i])
                continue;
            sizes[i]++;
            assigned++;
            const double err_now = std::abs((sizes[i] - 1) * mu2 + 1.0 - dominant[i]);
            const double err_next = std::abs(sizes[i] * mu2 + 1.0 - dominant[i]);
            if (err_now <= err_next)
            {
                active[i] = false;
                remaining--;
            }
        }
    }
    if (assigned < n)
        sizes[0] += n - assigned;

    return BlockSpec::uniform(std::move(sizes), mu2);
}

// B blocks of as-equal-as-possible sizes summing to n.
inline BlockSpec equal_blocks(int b, int n, double mu2)
{
    if (b < 1)
        throw invalid_input("block count must be positive");
    if (b > n)
        throw invalid_input("block count cannot exceed the port count");
    if (!(mu2 > 0.0) || !(mu2 < 1.0))
        throw invalid_input("mu2 must lie in (0, 1)");
    const int base = n / b, rem = n % b;
    std::vector<int> sizes(b, base);
    for (int i = 0; i < rem; i++)
        sizes[i]++;
    return BlockSpec::uniform(std::move(sizes), mu2);
}

// Materialize the block-diagonal correlation matrix of a BlockSpec.
inline CorrelationMatrix build_sigma_hat(const BlockSpec &spec)
{
    spec.validate();
    const int n = spec.total();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    int at = 0;
    for (std::size_t bi = 0; bi < spec.sizes.size(); bi++)
    {
        const int l = spec.sizes[bi];
        m.block(at, at, l, l).setConstant(spec.mu2[bi]);
        for (int i = 0; i < l; i++)
            m(at + i, at + i) = 1.0;
        at += l;
    }

    CorrelationMatrix sigma; // synthetic: model/geometry stay defaulted
    sigma.n = n;
    sigma.entries = std::move(m);
    return sigma;
}

} // namespace fabcor

#endif
