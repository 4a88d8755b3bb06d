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

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "fabcor/blockmodel.hpp"
#include "fabcor/correlation.hpp"
#include "fabcor/spectral.hpp"

using namespace fabcor;

TEST_CASE("closed-form block spectrum", "[blockmodel]")
{
    CHECK(block_eigenvalues(1, 0.5) == std::vector<double>{1.0});

    const auto ev = block_eigenvalues(4, 0.97);
    REQUIRE(ev.size() == 4);
    CHECK(ev[0] == Catch::Approx(3.91).margin(1e-14));
    for (int i = 1; i < 4; i++)
        CHECK(ev[i] == Catch::Approx(0.03).margin(1e-14));

    const auto evz = block_eigenvalues(6, 0.0);
    for (double v : evz)
        CHECK(v == 1.0);

    CHECK_THROWS_AS(block_eigenvalues(0, 0.5), invalid_input);
    CHECK_THROWS_AS(block_eigenvalues(3, 1.5), invalid_input);
}

TEST_CASE("spectrum-matching block sizing", "[blockmodel]")
{
    // exact eigenvalue match: one block soaking up everything
    {
        const double mu2 = 0.97;
        const std::vector<double> dom = {(7 - 1) * mu2 + 1.0};
        const BlockSpec s = algorithm1(dom, 7, mu2);
        REQUIRE(s.sizes == std::vector<int>{7});
    }

    // brute-force composition oracle at a tiny size: the sweep result must
    // fit each dominant eigenvalue at least as well as one-port granularity
    {
        const double mu2 = 0.97;
        const std::vector<double> dom = {5.5, 3.1};
        const BlockSpec s = algorithm1(dom, 9, mu2);
        CHECK(s.total() == 9);
        REQUIRE(s.b_count() == 2);

        // exhaustive search over compositions L1 + L2 = 9 minimizing the
        // summed spectral mismatch
        int best1 = -1;
        double best = 1e300;
        for (int l1 = 1; l1 <= 8; l1++)
        {
            const int l2 = 9 - l1;
            const double err = std::abs((l1 - 1) * mu2 + 1.0 - dom[0]) +
                               std::abs((l2 - 1) * mu2 + 1.0 - dom[1]);
            if (err < best)
            {
                best = err;
                best1 = l1;
            }
        }
        CHECK(s.sizes[0] == best1);
        const double err_sweep = std::abs((s.sizes[0] - 1) * mu2 + 1.0 - dom[0]) +
                                 std::abs((s.sizes[1] - 1) * mu2 + 1.0 - dom[1]);
        CHECK(err_sweep == Catch::Approx(best).margin(1e-12));
    }

    // per-block fit within one-port granularity when no leftovers are forced
    {
        std::mt19937_64 gen(1732050808u);
        std::uniform_real_distribution<double> mu2d(0.9, 0.99);
        for (int rep = 0; rep < 20; rep++)
        {
            const double mu2 = mu2d(gen);
            std::uniform_int_distribution<int> ld(1, 12);
            std::vector<int> truth(3);
            std::vector<double> dom(3);
            for (int b = 0; b < 3; b++)
                truth[b] = ld(gen);
            std::sort(truth.rbegin(), truth.rend());
            int n = 0;
            for (int b = 0; b < 3; b++)
            {
                dom[b] = (truth[b] - 1) * mu2 + 1.0;
                n += truth[b];
            }
            // exact closed-form eigenvalues: the sweep must recover the sizes
            const BlockSpec s = algorithm1(dom, n, mu2);
            CHECK(s.total() == n);
            for (int b = 0; b < 3; b++)
                CHECK(std::abs(dom[b] - ((s.sizes[b] - 1) * mu2 + 1.0)) <= mu2 + 1e-12);
        }
    }

    // degrees-of-freedom preservation on a real spectrum
    {
        const CorrelationMatrix sigma =
            build_correlation(make_line(6.0, 120), PropagationModel::jakes2d());
        const Spectrum sp = eigensystem(sigma);
        const int b = count_relevant(sp, 1.0);
        std::vector<double> dom(sp.eigenvalues.begin(), sp.eigenvalues.begin() + b);
        const BlockSpec s = algorithm1(dom, 120, 0.97);
        CHECK(s.b_count() == b);
        CHECK(s.total() == 120);
        for (int sz : s.sizes)
            CHECK(sz >= 1);
    }

    CHECK_THROWS_AS(algorithm1({}, 5, 0.97), invalid_input);
    CHECK_THROWS_AS(algorithm1({2.0, 1.5}, 1, 0.97), invalid_input);
    CHECK_THROWS_AS(algorithm1({2.0}, 5, 1.0), invalid_input);
    CHECK_THROWS_AS(algorithm1({1.5, 2.0}, 5, 0.97), invalid_input); // unsorted
}

TEST_CASE("equal block sizing", "[blockmodel]")
{
    CHECK(equal_blocks(3, 9, 0.5).sizes == std::vector<int>({3, 3, 3}));
    CHECK(equal_blocks(4, 10, 0.5).sizes == std::vector<int>({3, 3, 2, 2}));
    const BlockSpec tw = equal_blocks(12, 120, 0.96);
    CHECK(tw.sizes == std::vector<int>(12, 10));
    CHECK_THROWS_AS(equal_blocks(11, 10, 0.5), invalid_input);
    CHECK_THROWS_AS(equal_blocks(0, 10, 0.5), invalid_input);
}

TEST_CASE("materialized block matrix and its spectrum", "[blockmodel]")
{
    // identity from singleton blocks
    const CorrelationMatrix id = build_sigma_hat(BlockSpec::uniform({1, 1, 1}, 0.8));
    CHECK((std::get<Eigen::MatrixXd>(id.entries) - Eigen::MatrixXd::Identity(3, 3)).norm() ==
          0.0);

    // trace and block placement
    const BlockSpec spec = BlockSpec::uniform({2, 3}, 0.5);
    const CorrelationMatrix s = build_sigma_hat(spec);
    const auto &m = std::get<Eigen::MatrixXd>(s.entries);
    CHECK(m.trace() == 5.0);
    CHECK(m(0, 1) == 0.5);
    CHECK(m(0, 2) == 0.0); // across blocks
    CHECK(m(3, 4) == 0.5);

    const Spectrum sp = eigensystem(s);
    const std::vector<double> want = {2.0, 1.5, 0.5, 0.5, 0.5};
    for (int i = 0; i < 5; i++)
        CHECK(sp.eigenvalues[i] == Catch::Approx(want[i]).margin(1e-10));

    // fifty randomized blocks: solver spectrum equals the closed form
    std::mt19937_64 gen(2236067977u);
    std::uniform_int_distribution<int> ld(1, 40);
    std::uniform_real_distribution<double> mu2d(0.0, 1.0);
    for (int rep = 0; rep < 50; rep++)
    {
        const int l = ld(gen);
        const double mu2 = mu2d(gen);
        const Spectrum got = eigensystem(build_sigma_hat(BlockSpec::uniform({l}, mu2)));
        std::vector<double> want2 = block_eigenvalues(l, mu2);
        std::sort(want2.begin(), want2.end(), std::greater<double>());
        REQUIRE(got.eigenvalues.size() == want2.size());
        for (std::size_t i = 0; i < want2.size(); i++)
            CHECK(std::abs(got.eigenvalues[i] - want2[i]) < 1e-10);
    }
}

TEST_CASE("block spec serialization", "[blockmodel]")
{
    CHECK(BlockSpec::uniform({6, 3}, 0.97).to_line() == "2; 6,3; 0.97");
    CHECK(BlockSpec::uniform({10}, 0.5).to_line() == "1; 10; 0.5");
    BlockSpec mixed;
    mixed.sizes = {2, 2};
    mixed.mu2 = {0.9, 0.8};
    CHECK(mixed.to_line() == "2; 2,2; 0.9,0.8");

    BlockSpec bad;
    bad.sizes = {2, 0};
    bad.mu2 = {0.9, 0.9};
    CHECK_THROWS_AS(bad.validate(), invalid_input);
}
