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

// Sweep engine: evaluates outage-probability methods across one axis of a
// scenario config and renders plot-ready CSV. Sweep points are
// independent; they are dispatched to a small worker pool and the rows
// are emitted in axis order regardless of completion order, so results
// are identical for any pool size. Monte Carlo points derive their
// substreams from (seed, point index), which keeps every run with the
// same seed byte-identical.

#ifndef FABCOR_SWEEP_HPP
#define FABCOR_SWEEP_HPP

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "fabcor/blockmodel.hpp"
#include "fabcor/channelsim.hpp"
#include "fabcor/config.hpp"
#include "fabcor/correlation.hpp"
#include "fabcor/outage.hpp"
#include "fabcor/spectral.hpp"

namespace fabcor
{

namespace detail
{

inline OutageCurve::Method to_curve_method(SweepMethod m)
{
    switch (m)
    {
    case SweepMethod::Quadrature: return OutageCurve::Method::Quadrature;
    case SweepMethod::Simplified: return OutageCurve::Method::Simplified;
    case SweepMethod::IID: return OutageCurve::Method::IID;
    case SweepMethod::ConstantBaseline: return OutageCurve::Method::ConstantBaseline;
    case SweepMethod::MonteCarlo: return OutageCurve::Method::MonteCarlo;
    case SweepMethod::EigCount: return OutageCurve::Method::EigCount;
    case SweepMethod::Gain: return OutageCurve::Method::Gain;
    }
    return OutageCurve::Method::Quadrature;
}

inline PropagationModel model_of(const SweepConfig &cfg)
{
    switch (cfg.model)
    {
    case PropagationModel::Kind::Jakes2D: return PropagationModel::jakes2d();
    case PropagationModel::Kind::Clarke3D: return PropagationModel::clarke3d();
    case PropagationModel::Kind::RestrictedAzimuth:
        return PropagationModel::restricted_azimuth(cfg.azimuth_span);
    }
    return PropagationModel::clarke3d();
}

// Port counts follow N = round(W * density) per axis, floored at 2.
inline ApertureGeometry geometry_of(const SweepConfig &cfg, double density, double line_width)
{
    const auto ports = [&](double w)
    { return std::max(2, static_cast<int>(std::lround(w * density))); };
    if (cfg.geometry == ApertureGeometry::Kind::Line)
        return make_line(line_width, ports(line_width));
    return make_plane(cfg.width_x, cfg.width_z, ports(cfg.width_x), ports(cfg.width_z));
}

// Everything one sweep point needs that involves the aperture.
struct PointState
{
    CorrelationMatrix sigma;
    int relevant = 0; // eigenvalues above the threshold
    BlockSpec blocks;
    double mu2_avg = 0.0; // aperture-average correlation (baseline model)
};

inline PointState make_point_state(const SweepConfig &cfg, double density, double line_width)
{
    PointState st;
    const ApertureGeometry geom = geometry_of(cfg, density, line_width);
    st.sigma = build_correlation(geom, model_of(cfg));
    const Spectrum spec = eigensystem(st.sigma);
    st.relevant = count_relevant(spec, cfg.rho_threshold(st.sigma.n));
    if (st.relevant < 1)
        throw invalid_input("rho_th leaves no relevant eigenvalues; lower the threshold");
    if (cfg.blocks == BlockChoice::Algorithm1)
    {
        const std::vector<double> dominant(spec.eigenvalues.begin(),
                                           spec.eigenvalues.begin() + st.relevant);
        st.blocks = algorithm1(dominant, st.sigma.n, cfg.mu2);
    }
    else
    {
        st.blocks = equal_blocks(st.relevant, st.sigma.n, cfg.mu2);
    }
    st.mu2_avg = constant_correlation_mu2(st.sigma, cfg.mu2_average);
    return st;
}

// Independent antennas for a lone user: each of the b branches fails on
// its own SNR threshold.
inline double iid_single_user(double gamma, int b)
{
    return std::pow(-std::expm1(-0.5 * gamma), b);
}

inline double eval_method(SweepMethod m, const SweepConfig &cfg, const PointState &st,
                          int users, double gamma, int block_size)
{
    switch (m)
    {
    case SweepMethod::Quadrature:
        if (users == 1)
            return pout_single_user(gamma, st.blocks);
        return pout_quadrature({users, gamma, st.blocks, 30, 30});
    case SweepMethod::Simplified:
        return pout_simplified({users, gamma, st.blocks, 30, 30});
    case SweepMethod::IID:
        if (users == 1)
            return iid_single_user(gamma, st.blocks.b_count());
        return pout_iid(gamma, users, st.blocks.b_count());
    case SweepMethod::ConstantBaseline:
        if (users == 1)
            return pout_single_user(gamma, BlockSpec{{st.sigma.n}, {st.mu2_avg}});
        return pout_constant_baseline(gamma, users, st.sigma.n, st.mu2_avg);
    case SweepMethod::EigCount:
        return st.relevant;
    case SweepMethod::Gain:
        return delta_pout_block(gamma, users, block_size, cfg.mu2);
    case SweepMethod::MonteCarlo:
        break; // handled by the caller (needs seeding context)
    }
    throw invalid_input("method is not analytic");
}

// Maps one axis value onto the scenario knob it drives.
struct AxisBinding
{
    double density;
    double line_width;
    int users;
    double gamma;
    int block_size;
    bool rebuilds_aperture;
};

inline AxisBinding bind_axis(const SweepConfig &cfg, double v)
{
    AxisBinding b{cfg.ports_per_wavelength, cfg.width, cfg.users, cfg.gamma_linear(), 0,
                  false};
    switch (cfg.axis)
    {
    case SweepAxis::PortsPerWavelength:
        b.density = v;
        b.rebuilds_aperture = true;
        break;
    case SweepAxis::ApertureSize:
        b.line_width = v;
        b.rebuilds_aperture = true;
        break;
    case SweepAxis::GammaDb:
        b.gamma = std::pow(10.0, v / 10.0);
        break;
    case SweepAxis::Users:
        b.users = static_cast<int>(v);
        break;
    case SweepAxis::BlockSize:
        b.block_size = static_cast<int>(v);
        break;
    }
    return b;
}

} // namespace detail

// Evaluate every configured method at every axis value. Curves come back
// in config method order, each with one entry per axis value; ci95 is
// zero everywhere except Monte Carlo.
inline std::vector<OutageCurve> run_sweep(const SweepConfig &cfg)
{
    const int npts = static_cast<int>(cfg.values.size());
    if (npts == 0)
        throw invalid_input("sweep needs at least one axis value");
    if (cfg.methods.empty())
        throw invalid_input("sweep needs at least one method");

    std::vector<OutageCurve> curves(cfg.methods.size());
    for (std::size_t m = 0; m < cfg.methods.size(); m++)
    {
        curves[m].axis_name = axis_name(cfg.axis);
        curves[m].axis = cfg.values;
        curves[m].method = detail::to_curve_method(cfg.methods[m]);
        curves[m].values.assign(npts, 0.0);
        curves[m].ci95.assign(npts, 0.0);
    }

    const bool needs_aperture = cfg.axis != SweepAxis::BlockSize;
    const bool aperture_fixed =
        needs_aperture && (cfg.axis == SweepAxis::GammaDb || cfg.axis == SweepAxis::Users);

    // shared state for axes that keep the aperture fixed
    detail::PointState shared;
    if (aperture_fixed)
        shared = detail::make_point_state(cfg, cfg.ports_per_wavelength, cfg.width);

    std::size_t mc_slot = cfg.methods.size();
    for (std::size_t m = 0; m < cfg.methods.size(); m++)
        if (cfg.methods[m] == SweepMethod::MonteCarlo)
            mc_slot = m;

    // Monte Carlo on a gamma sweep reuses one set of channel draws for the
    // whole curve: the selected port does not depend on the threshold, so a
    // single pass yields every point with common random numbers.
    if (mc_slot < cfg.methods.size() && cfg.axis == SweepAxis::GammaDb)
    {
        std::vector<double> gammas(npts);
        for (int i = 0; i < npts; i++)
            gammas[i] = std::pow(10.0, cfg.values[i] / 10.0);
        SimConfig sim{cfg.trials, cfg.seed, shared.sigma, cfg.users, 1.0, cfg.partitions};
        const std::vector<OutageEstimate> est = empirical_pout_curve(sim, gammas);
        for (int i = 0; i < npts; i++)
        {
            curves[mc_slot].values[i] = est[i].p_hat;
            curves[mc_slot].ci95[i] = est[i].half_ci95;
        }
    }

    // remaining work, one task per axis point
    std::exception_ptr fault = nullptr;
    std::mutex fault_mu;
    std::atomic<int> next{0};
    const auto worker = [&]()
    {
        for (;;)
        {
            const int i = next.fetch_add(1);
            if (i >= npts)
                return;
            try
            {
                const detail::AxisBinding ax = detail::bind_axis(cfg, cfg.values[i]);
                std::optional<detail::PointState> local;
                if (ax.rebuilds_aperture)
                {
                    local.emplace(detail::make_point_state(cfg, ax.density, ax.line_width));
                }
                else if (cfg.axis == SweepAxis::BlockSize)
                {
                    // no aperture here: methods act on one block of size L
                    local.emplace();
                    local->blocks = BlockSpec{{ax.block_size}, {cfg.mu2}};
                    local->relevant = 1;
                }
                const detail::PointState &st = local ? *local : shared;
                for (std::size_t m = 0; m < cfg.methods.size(); m++)
                {
                    if (cfg.methods[m] == SweepMethod::MonteCarlo)
                    {
                        if (cfg.axis == SweepAxis::GammaDb)
                            continue; // filled by the one-pass curve above
                        SimConfig sim{cfg.trials, cfg.seed + static_cast<std::uint64_t>(i),
                                      st.sigma, ax.users, ax.gamma, cfg.partitions};
                        const OutageEstimate est = empirical_pout(sim);
                        curves[m].values[i] = est.p_hat;
                        curves[m].ci95[i] = est.half_ci95;
                    }
                    else
                    {
                        curves[m].values[i] = detail::eval_method(
                            cfg.methods[m], cfg, st, ax.users, ax.gamma, ax.block_size);
                    }
                }
            }
            catch (...)
            {
                std::lock_guard<std::mutex> lock(fault_mu);
                if (!fault)
                    fault = std::current_exception();
                return;
            }
        }
    };

    const unsigned hw = std::thread::hardware_concurrency();
    const int pool = std::max(1, std::min<int>(npts, hw ? static_cast<int>(hw) : 1));
    if (pool == 1)
    {
        worker();
    }
    else
    {
        std::vector<std::thread> threads;
        threads.reserve(pool);
        for (int t = 0; t < pool; t++)
            threads.emplace_back(worker);
        for (std::thread &t : threads)
            t.join();
    }
    if (fault)
        std::rethrow_exception(fault);

    return curves;
}

namespace detail
{

inline std::string fmt_csv(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

} // namespace detail

// Plot-ready rows, axis-major with methods in config order inside each
// axis point.
inline std::string render_sweep_csv(const std::vector<OutageCurve> &curves)
{
    std::string out = "axis,method,value,ci95\n";
    if (curves.empty())
        return out;
    for (std::size_t i = 0; i < curves.front().axis.size(); i++)
        for (const OutageCurve &c : curves)
            out += detail::fmt_csv(c.axis[i]) + "," + method_name(c.method) + "," +
                   detail::fmt_csv(c.values[i]) + "," + detail::fmt_csv(c.ci95[i]) + "\n";
    return out;
}

// Sorted spectra of an exact correlation matrix and its block-diagonal
// approximation, for overlay plots.
struct SpectrumPair
{
    std::vector<double> sigma_eig;     // descending
    std::vector<double> sigma_hat_eig; // descending
    BlockSpec blocks;
    int relevant = 0;
};

inline SpectrumPair spectrum_pair(const CorrelationMatrix &sigma, double rho_th, double mu2,
                                  BlockChoice choice)
{
    SpectrumPair out;
    const Spectrum spec = eigensystem(sigma);
    out.sigma_eig = spec.eigenvalues;
    out.relevant = count_relevant(spec, rho_th);
    if (out.relevant < 1)
        throw invalid_input("rho_th leaves no relevant eigenvalues; lower the threshold");
    if (choice == BlockChoice::Algorithm1)
    {
        const std::vector<double> dominant(spec.eigenvalues.begin(),
                                           spec.eigenvalues.begin() + out.relevant);
        out.blocks = algorithm1(dominant, sigma.n, mu2);
    }
    else
    {
        out.blocks = equal_blocks(out.relevant, sigma.n, mu2);
    }
    out.sigma_hat_eig = eigensystem(build_sigma_hat(out.blocks)).eigenvalues;
    return out;
}

inline SpectrumPair run_spectrum(const SweepConfig &cfg)
{
    const ApertureGeometry geom =
        detail::geometry_of(cfg, cfg.ports_per_wavelength, cfg.width);
    const CorrelationMatrix sigma = build_correlation(geom, detail::model_of(cfg));
    return spectrum_pair(sigma, cfg.rho_threshold(sigma.n), cfg.mu2, cfg.blocks);
}

inline std::string render_spectrum_csv(const SpectrumPair &sp)
{
    std::string out = "index,sigma_eig,sigma_hat_eig\n";
    for (std::size_t i = 0; i < sp.sigma_eig.size(); i++)
        out += std::to_string(i + 1) + "," + detail::fmt_csv(sp.sigma_eig[i]) + "," +
               detail::fmt_csv(sp.sigma_hat_eig[i]) + "\n";
    return out;
}

inline std::string render_blocks_csv(const BlockSpec &spec)
{
    std::string out = "block,size,mu2\n";
    for (int b = 0; b < spec.b_count(); b++)
        out += std::to_string(b + 1) + "," + std::to_string(spec.sizes[b]) + "," +
               detail::fmt_csv(spec.mu2[b]) + "\n";
    return out;
}

inline void write_text_file(const std::string &path, const std::string &content)
{
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw invalid_input("cannot open output file '" + path + "'");
    f << content;
    if (!f)
        throw invalid_input("failed while writing '" + path + "'");
}

// The full sweep operation: evaluate and write one CSV.
inline std::vector<OutageCurve> run_sweep_to_file(const SweepConfig &cfg,
                                                  const std::string &path)
{
    if (path.empty())
        throw invalid_input("sweep needs an output path (config 'output' or --out)");
    const std::vector<OutageCurve> curves = run_sweep(cfg);
    write_text_file(path, render_sweep_csv(curves));
    return curves;
}

} // namespace fabcor

#endif
