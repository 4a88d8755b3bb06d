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

// Spatial correlation matrices of fluid-antenna port grids.
//
// Three propagation models are supported, all with isotropic element
// patterns and unit per-port power (so the result is a correlation
// matrix with exact unit diagonal):
//   Jakes2D           ring of arrivals in the antenna plane, entry J0(2 pi d)
//   Clarke3D          spherically isotropic arrivals, entry sinc(2 pi d)
//   RestrictedAzimuth arrivals with polar density sin(theta)/2 on [0, pi]
//                     and azimuth uniform on [pi/2 - s/2, pi/2 + s/2];
//                     the span s = 2 pi recovers Clarke3D
// with d the wavelength-normalized Euclidean distance between ports.

#ifndef FABCOR_CORRELATION_HPP
#define FABCOR_CORRELATION_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "fabcor/errors.hpp"
#include "fabcor/geometry.hpp"
#include "fabcor/specfun.hpp"

namespace fabcor
{

struct PropagationModel
{
    enum class Kind
    {
        Jakes2D,
        Clarke3D,
        RestrictedAzimuth
    };

    Kind kind = Kind::Clarke3D;
    double azimuth_span = 2.0 * std::numbers::pi; // RestrictedAzimuth only

    static PropagationModel jakes2d()
    {
        return {Kind::Jakes2D, 2.0 * std::numbers::pi};
    }
    static PropagationModel clarke3d()
    {
        return {Kind::Clarke3D, 2.0 * std::numbers::pi};
    }
    static PropagationModel restricted_azimuth(double span)
    {
        if (!(span > 0.0) || span > 2.0 * std::numbers::pi + 1.0e-12)
            throw invalid_input("azimuth span must lie in (0, 2 pi]");
        return {Kind::RestrictedAzimuth, span};
    }
};

// Hermitian positive semidefinite correlation matrix with unit diagonal.
// Real models store a MatrixXd; RestrictedAzimuth keeps complex storage
// (its entries are complex for general port layouts even though the xz
// grids used here land on the real axis up to quadrature roundoff).
struct CorrelationMatrix
{
    int n = 0;
    std::variant<Eigen::MatrixXd, Eigen::MatrixXcd> entries;
    PropagationModel model;
    ApertureGeometry geometry;

    bool is_complex() const { return entries.index() == 1; }

    std::complex<double> entry(int i, int j) const
    {
        if (is_complex())
            return std::get<Eigen::MatrixXcd>(entries)(i, j);
        return {std::get<Eigen::MatrixXd>(entries)(i, j), 0.0};
    }
};

namespace detail
{

// Correlation value table over the port-index offsets of a grid geometry.
// Entries depend only on (|dix|, |diz|), which makes Line matrices exactly
// Toeplitz and Plane matrices exactly symmetric under index reflection.
inline Eigen::MatrixXd offset_table_real(const ApertureGeometry &geom, bool jakes)
{
    const double sx = (geom.nx > 1) ? geom.wx / (geom.nx - 1) : 0.0;
    const double sz = (geom.nz > 1) ? geom.wz / (geom.nz - 1) : 0.0;
    Eigen::MatrixXd tab(geom.nx, geom.nz);
    for (int dz = 0; dz < geom.nz; dz++)
        for (int dx = 0; dx < geom.nx; dx++)
        {
            const double d = std::hypot(dx * sx, dz * sz);
            tab(dx, dz) = jakes ? bessel_j0(2.0 * std::numbers::pi * d)
                                : sinc(2.0 * std::numbers::pi * d);
        }
    tab(0, 0) = 1.0;
    return tab;
}

// One resolution level of the arrival-direction average
//   E[exp(j 2 pi (sin(th) cos(ph) dx + cos(th) dz))]
// over f_th = sin(th)/2 on [0, pi] and ph uniform on the span around pi/2,
// by tensor Gauss-Legendre quadrature. Normalizing by the quadrature mass
// of the density keeps the zero-offset entry exactly 1.
inline Eigen::MatrixXcd azimuth_table_level(const ApertureGeometry &geom, double span, int m)
{
    const double pi = std::numbers::pi;
    const QuadratureRule gl = gauss_legendre(m);

    // polar nodes on [0, pi], azimuth nodes on the span
    std::vector<double> sin_th(m), cos_th(m), wth(m), cos_ph(m), wph(m);
    for (int i = 0; i < m; i++)
    {
        const double th = 0.5 * pi * (gl.nodes[i] + 1.0);
        sin_th[i] = std::sin(th);
        cos_th[i] = std::cos(th);
        wth[i] = gl.weights[i] * 0.5 * pi * 0.5 * sin_th[i]; // f_th times Jacobian
        const double ph = 0.5 * pi + 0.5 * span * gl.nodes[i];
        cos_ph[i] = std::cos(ph);
        wph[i] = gl.weights[i] * 0.5; // uniform density times Jacobian / span
    }
    double mass = 0.0, wth_sum = 0.0, wph_sum = 0.0;
    for (int i = 0; i < m; i++)
    {
        wth_sum += wth[i];
        wph_sum += wph[i];
    }
    mass = wth_sum * wph_sum;

    const double sx = (geom.nx > 1) ? geom.wx / (geom.nx - 1) : 0.0;
    const double sz = (geom.nz > 1) ? geom.wz / (geom.nz - 1) : 0.0;
    Eigen::MatrixXcd tab(geom.nx, geom.nz);
    for (int dz = 0; dz < geom.nz; dz++)
        for (int dx = 0; dx < geom.nx; dx++)
        {
            const double ax = 2.0 * pi * dx * sx;
            const double az = 2.0 * pi * dz * sz;
            std::complex<double> acc(0.0, 0.0);
            for (int it = 0; it < m; it++)
            {
                // inner azimuth average at fixed polar angle
                std::complex<double> inner(0.0, 0.0);
                const double bx = ax * sin_th[it];
                for (int ip = 0; ip < m; ip++)
                {
                    const double arg = bx * cos_ph[ip];
                    inner += wph[ip] * std::complex<double>(std::cos(arg), std::sin(arg));
                }
                const double argz = az * cos_th[it];
                acc += wth[it] * inner * std::complex<double>(std::cos(argz), std::sin(argz));
            }
            tab(dx, dz) = acc / mass;
        }
    tab(0, 0) = 1.0;
    return tab;
}

inline Eigen::MatrixXcd azimuth_table(const ApertureGeometry &geom, double span)
{
    // refine until two consecutive tensor resolutions agree entrywise
    const int levels[3] = {128, 256, 512};
    Eigen::MatrixXcd prev = azimuth_table_level(geom, span, levels[0]);
    for (int l = 1; l < 3; l++)
    {
        Eigen::MatrixXcd next = azimuth_table_level(geom, span, levels[l]);
        const double diff = (next - prev).cwiseAbs().maxCoeff();
        if (diff <= 1.0e-7)
            return next;
        prev.swap(next);
    }
    throw numerical_fault("correlation", "arrival-average quadrature did not converge");
}

template <typename Mat>
inline Mat fill_from_table(const ApertureGeometry &geom, const Eigen::Matrix<typename Mat::Scalar, Eigen::Dynamic, Eigen::Dynamic> &tab)
{
    const int n = geom.ports();
    Mat out(n, n);
    for (int j = 0; j < n; j++)
    {
        const int jx = j % geom.nx, jz = j / geom.nx;
        for (int i = 0; i < n; i++)
        {
            const int ix = i % geom.nx, iz = i / geom.nx;
            out(i, j) = tab(std::abs(ix - jx), std::abs(iz - jz));
        }
    }
    return out;
}

} // namespace detail

inline CorrelationMatrix build_correlation(const ApertureGeometry &geom,
                                           const PropagationModel &model)
{
    const int n = geom.ports();
    if (n < 1)
        throw invalid_input("geometry has no ports");

    CorrelationMatrix sigma;
    sigma.n = n;
    sigma.model = model;
    sigma.geometry = geom;

    switch (model.kind)
    {
    case PropagationModel::Kind::Jakes2D:
    {
        if (geom.kind != ApertureGeometry::Kind::Line)
            throw invalid_input("the ring-of-arrivals model applies to Line geometries only");
        sigma.entries = detail::fill_from_table<Eigen::MatrixXd>(
            geom, detail::offset_table_real(geom, true));
        break;
    }
    case PropagationModel::Kind::Clarke3D:
    {
        sigma.entries = detail::fill_from_table<Eigen::MatrixXd>(
            geom, detail::offset_table_real(geom, false));
        break;
    }
    case PropagationModel::Kind::RestrictedAzimuth:
    {
        if (!(model.azimuth_span > 0.0) ||
            model.azimuth_span > 2.0 * std::numbers::pi + 1.0e-12)
            throw invalid_input("azimuth span must lie in (0, 2 pi]");
        Eigen::MatrixXcd tab = detail::azimuth_table(geom, model.azimuth_span);
        const int ncols = n;
        Eigen::MatrixXcd out(ncols, ncols);
        for (int j = 0; j < ncols; j++)
        {
            const int jx = j % geom.nx, jz = j / geom.nx;
            out(j, j) = 1.0;
            for (int i = j + 1; i < ncols; i++)
            {
                const int ix = i % geom.nx, iz = i / geom.nx;
                const std::complex<double> v = tab(std::abs(ix - jx), std::abs(iz - jz));
                out(i, j) = v;
                out(j, i) = std::conj(v); // Hermitian by construction
            }
        }
        sigma.entries = std::move(out);
        break;
    }
    }
    return sigma;
}

// Averaging rule for collapsing a correlation matrix to one scalar.
enum class AverageKind
{
    Magnitude,        // mean of |s_ij| over i != j (default)
    Signed,           // mean of Re(s_ij)
    SquaredMagnitude, // mean of |s_ij|^2
};

// Scalar mu^2 of the constant-correlation stand-in for sigma: the average
// off-diagonal correlation, clamped to [0, 1].
inline double constant_correlation_mu2(const CorrelationMatrix &sigma,
                                       AverageKind kind = AverageKind::Magnitude)
{
    if (sigma.n < 2)
        throw invalid_input("constant_correlation_mu2 needs at least 2 ports");
    long double acc = 0.0L;
    for (int j = 0; j < sigma.n; j++)
        for (int i = 0; i < sigma.n; i++)
        {
            if (i == j)
                continue;
            const std::complex<double> v = sigma.entry(i, j);
            switch (kind)
            {
            case AverageKind::Magnitude: acc += std::abs(v); break;
            case AverageKind::Signed: acc += v.real(); break;
            case AverageKind::SquaredMagnitude: acc += std::norm(v); break;
            }
        }
    const long double cnt = static_cast<long double>(sigma.n) * (sigma.n - 1);
    return std::clamp(static_cast<double>(acc / cnt), 0.0, 1.0);
}

} // namespace fabcor

#endif
