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

// Port layouts for fluid antennas. All lengths are normalized by the
// carrier wavelength. A Line aperture runs along the x axis; a Plane
// aperture lies in the xz plane with ports vectorized x-fastest
// (index = ix + iz * nx).

#ifndef FABCOR_GEOMETRY_HPP
#define FABCOR_GEOMETRY_HPP

#include <array>
#include <vector>

#include "fabcor/errors.hpp"

namespace fabcor
{

struct ApertureGeometry
{
    enum class Kind
    {
        Line,
        Plane
    };

    Kind kind = Kind::Line;
    double wx = 0.0; // aperture extent along x (wavelengths)
    double wz = 0.0; // aperture extent along z (Plane only)
    int nx = 0;      // ports along x
    int nz = 1;      // ports along z (1 for Line)
    std::vector<std::array<double, 3>> positions;

    int ports() const { return static_cast<int>(positions.size()); }
};

// N ports equally spaced on [0, W] along the x axis.
inline ApertureGeometry make_line(double w, int n)
{
    if (!(w > 0.0))
        throw invalid_input("line aperture length must be positive");
    if (n < 2)
        throw invalid_input("line aperture needs at least 2 ports");

    ApertureGeometry g;
    g.kind = ApertureGeometry::Kind::Line;
    g.wx = w;
    g.wz = 0.0;
    g.nx = n;
    g.nz = 1;
    g.positions.resize(n);
    const double step = w / (n - 1);
    for (int i = 0; i < n; i++)
        g.positions[i] = {i * step, 0.0, 0.0};
    g.positions[n - 1][0] = w; // exact endpoint
    return g;
}

// nx-by-nz grid on [0, wx] x [0, wz] in the xz plane, x-fastest order.
inline ApertureGeometry make_plane(double wx, double wz, int nx, int nz)
{
    if (!(wx > 0.0) || !(wz > 0.0))
        throw invalid_input("plane aperture sides must be positive");
    if (nx < 2 || nz < 2)
        throw invalid_input("plane aperture needs at least 2 ports per axis");

    ApertureGeometry g;
    g.kind = ApertureGeometry::Kind::Plane;
    g.wx = wx;
    g.wz = wz;
    g.nx = nx;
    g.nz = nz;
    g.positions.resize(static_cast<std::size_t>(nx) * nz);
    const double sx = wx / (nx - 1);
    const double sz = wz / (nz - 1);
    for (int iz = 0; iz < nz; iz++)
        for (int ix = 0; ix < nx; ix++)
        {
            const double px = (ix == nx - 1) ? wx : ix * sx;
            const double pz = (iz == nz - 1) ? wz : iz * sz;
            g.positions[static_cast<std::size_t>(iz) * nx + ix] = {px, 0.0, pz};
        }
    return g;
}

} // namespace fabcor

#endif
