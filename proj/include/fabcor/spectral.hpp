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

// Hermitian eigenanalysis of correlation matrices: the sorted spectrum,
// the count of eigenvalues above a threshold (the channel's effective
// degrees of freedom), and a positive semidefinite square-root factor
// for channel sampling.

#ifndef FABCOR_SPECTRAL_HPP
#define FABCOR_SPECTRAL_HPP

#include <algorithm>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "fabcor/correlation.hpp"
#include "fabcor/errors.hpp"

namespace fabcor
{

struct Spectrum
{
    std::vector<double> eigenvalues; // sorted descending
    int source_n = 0;
};

namespace detail
{
template <typename Mat>
inline Eigen::SelfAdjointEigenSolver<Mat> solve_hermitian(const Mat &m)
{
    Eigen::SelfAdjointEigenSolver<Mat> es(m);
    if (es.info() != Eigen::Success)
        throw numerical_fault("spectral", "hermitian eigendecomposition did not converge");
    return es;
}
} // namespace detail

inline Spectrum eigensystem(const CorrelationMatrix &sigma)
{
    Spectrum s;
    s.source_n = sigma.n;
    std::visit(
        [&](const auto &m)
        {
            const auto es = detail::solve_hermitian(m);
            s.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + sigma.n);
        },
        sigma.entries);
    std::sort(s.eigenvalues.begin(), s.eigenvalues.end(), std::greater<double>());
    return s;
}

// Number of eigenvalues strictly above rho_th.
inline int count_relevant(const Spectrum &spec, double rho_th)
{
    if (!(rho_th > 0.0))
        throw invalid_input("eigenvalue threshold must be positive");
    int c = 0;
    for (double v : spec.eigenvalues)
        if (v > rho_th)
            c++;
    return c;
}

// Factor S with S S^H = sigma (negative eigenvalues clipped to zero before
// the square root), in the same real/complex storage as the input.
inline std::variant<Eigen::MatrixXd, Eigen::MatrixXcd>
matrix_sqrt_psd(const CorrelationMatrix &sigma)
{
    std::variant<Eigen::MatrixXd, Eigen::MatrixXcd> out;
    std::visit(
        [&](const auto &m)
        {
            using Scalar = typename std::decay_t<decltype(m)>::Scalar;
            const auto es = detail::solve_hermitian(m);
            const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> root =
                es.eigenvalues().cwiseMax(0.0).cwiseSqrt().template cast<Scalar>();
            out = (es.eigenvectors() * root.asDiagonal()).eval();
        },
        sigma.entries);
    return out;
}

} // namespace fabcor

#endif
