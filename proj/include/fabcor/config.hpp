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

// Flat key=value scenario configs for the sweep engine and the CLI.
// The format is line oriented: one `key = value` pair per line, `#` starts
// a comment, blank lines are ignored. All lengths are wavelength
// normalized. Parse and validation failures raise config_error carrying
// the 1-based line and column of the offending token, and a config echoed
// by serialize_config() re-parses to an identical structure.

#ifndef FABCOR_CONFIG_HPP
#define FABCOR_CONFIG_HPP

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "fabcor/correlation.hpp"
#include "fabcor/errors.hpp"
#include "fabcor/geometry.hpp"

namespace fabcor
{

// Raised on malformed or inconsistent configs. Line and column are
// 1-based; cross-key problems cite the key they were detected on, and
// missing-key problems report line 0.
class config_error : public std::runtime_error
{
  public:
    config_error(int line, int col, const std::string &msg)
        : std::runtime_error("line " + std::to_string(line) + ", column " +
                             std::to_string(col) + ": " + msg),
          line_(line), col_(col)
    {
    }
    int line() const noexcept { return line_; }
    int col() const noexcept { return col_; }

  private:
    int line_;
    int col_;
};

enum class SweepAxis
{
    PortsPerWavelength, // port density of a fixed aperture
    GammaDb,            // SIR threshold in dB
    Users,              // number of co-channel users
    ApertureSize,       // line length at fixed port density
    BlockSize           // single-block size for per-block gain curves
};

enum class SweepMethod
{
    Quadrature,       // block formula via Gauss-Laguerre quadrature
    Simplified,       // step-function threshold approximation
    IID,              // independent-block closed form
    ConstantBaseline, // one all-port block at the average correlation
    MonteCarlo,       // seeded simulation on the exact covariance
    EigCount,         // relevant-eigenvalue count (spectral occupancy)
    Gain              // per-block outage gain over a single antenna
};

enum class BlockChoice
{
    Algorithm1, // spectrum-matched round-robin sizing
    Equal       // B equal blocks
};

inline const char *axis_name(SweepAxis a)
{
    switch (a)
    {
    case SweepAxis::PortsPerWavelength: return "ports_per_wavelength";
    case SweepAxis::GammaDb: return "gamma_db";
    case SweepAxis::Users: return "users";
    case SweepAxis::ApertureSize: return "aperture_size";
    case SweepAxis::BlockSize: return "block_size";
    }
    return "unknown";
}

inline const char *sweep_method_name(SweepMethod m)
{
    switch (m)
    {
    case SweepMethod::Quadrature: return "quadrature";
    case SweepMethod::Simplified: return "simplified";
    case SweepMethod::IID: return "iid";
    case SweepMethod::ConstantBaseline: return "baseline";
    case SweepMethod::MonteCarlo: return "mc";
    case SweepMethod::EigCount: return "eig_count";
    case SweepMethod::Gain: return "gain";
    }
    return "unknown";
}

struct SweepConfig
{
    // scenario ----------------------------------------------------------
    ApertureGeometry::Kind geometry = ApertureGeometry::Kind::Line;
    double width = 0.0;   // line extent
    double width_x = 0.0; // plane extents
    double width_z = 0.0;
    double ports_per_wavelength = 0.0;
    PropagationModel::Kind model = PropagationModel::Kind::Jakes2D;
    double azimuth_span = 0.0; // radians, restricted_azimuth only
    int users = 2;
    double gamma_value = 1.0; // in the unit selected by gamma_in_db
    bool gamma_in_db = false;
    double mu2 = 0.97;
    double rho_th = 1.0;
    bool rho_th_scaled = false; // rho_th tracks ports/100 when set
    BlockChoice blocks = BlockChoice::Algorithm1;
    AverageKind mu2_average = AverageKind::Magnitude;

    // sweep -------------------------------------------------------------
    SweepAxis axis = SweepAxis::GammaDb;
    std::vector<double> values;
    std::vector<SweepMethod> methods;
    std::string output_path;
    std::uint64_t seed = 1;
    long trials = 100000;
    long tail_trials = 1000000;
    int partitions = 8;

    // keys that appeared in the source text; serialize_config emits exactly
    // these, which makes the echo round-trip exact
    std::set<std::string> keys_present;

    bool operator==(const SweepConfig &) const = default;

    bool has(const std::string &key) const { return keys_present.count(key) != 0; }

    double gamma_linear() const
    {
        return gamma_in_db ? std::pow(10.0, gamma_value / 10.0) : gamma_value;
    }

    // rho_th = N/100 scaling resolved against a concrete port count
    double rho_threshold(int ports) const
    {
        return rho_th_scaled ? ports / 100.0 : rho_th;
    }
};

namespace detail
{

struct KeyLoc
{
    int line = 0;
    int col = 0; // column of the value (for value errors)
    int key_col = 0;
};

inline std::string trim(const std::string &s, std::size_t from, std::size_t to,
                        std::size_t &start_out)
{
    std::size_t a = from;
    while (a < to && std::isspace(static_cast<unsigned char>(s[a])))
        a++;
    std::size_t b = to;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
        b--;
    start_out = a;
    return s.substr(a, b - a);
}

inline double parse_double_token(const std::string &tok, int line, int col)
{
    const char *begin = tok.c_str();
    char *end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || !std::isfinite(v))
        throw config_error(line, col, "expected a finite number, got '" + tok + "'");
    return v;
}

inline long long parse_int_token(const std::string &tok, int line, int col)
{
    const double v = parse_double_token(tok, line, col);
    if (v != std::floor(v) || std::fabs(v) > 9.0e15)
        throw config_error(line, col, "expected an integer, got '" + tok + "'");
    return static_cast<long long>(v);
}

inline std::vector<std::string> split_list(const std::string &tok)
{
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= tok.size())
    {
        std::size_t comma = tok.find(',', pos);
        if (comma == std::string::npos)
            comma = tok.size();
        std::size_t dummy = 0;
        out.push_back(trim(tok, pos, comma, dummy));
        pos = comma + 1;
    }
    return out;
}

inline std::string fmt_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace detail

// Parse without cross-key validation; every key is checked syntactically
// and range-checked in isolation. Returns the config plus the source
// location of each key for the finalize passes.
inline SweepConfig parse_config_text(const std::string &text,
                                     std::map<std::string, detail::KeyLoc> *locs_out = nullptr)
{
    SweepConfig cfg;
    std::map<std::string, detail::KeyLoc> locs;

    std::size_t pos = 0;
    int line_no = 0;
    while (pos <= text.size())
    {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos)
            eol = text.size();
        line_no++;
        std::string line = text.substr(pos, eol - pos);
        pos = eol + 1;

        const std::size_t hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);

        std::size_t key_start = 0;
        const std::string stripped = detail::trim(line, 0, line.size(), key_start);
        if (stripped.empty())
        {
            if (pos > text.size())
                break;
            continue;
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error(line_no, static_cast<int>(key_start) + 1,
                               "expected 'key = value'");

        std::size_t ks = 0, vs = 0;
        const std::string key = detail::trim(line, 0, eq, ks);
        const std::string val = detail::trim(line, eq + 1, line.size(), vs);
        if (key.empty())
            throw config_error(line_no, static_cast<int>(eq) + 1, "missing key before '='");
        if (val.empty())
            throw config_error(line_no, static_cast<int>(eq) + 2,
                               "missing value for key '" + key + "'");

        detail::KeyLoc loc{line_no, static_cast<int>(vs) + 1, static_cast<int>(ks) + 1};
        if (locs.count(key))
            throw config_error(line_no, loc.key_col, "duplicate key '" + key + "'");
        locs[key] = loc;
        cfg.keys_present.insert(key);

        const int vline = loc.line, vcol = loc.col;
        if (key == "geometry")
        {
            if (val == "line")
                cfg.geometry = ApertureGeometry::Kind::Line;
            else if (val == "plane")
                cfg.geometry = ApertureGeometry::Kind::Plane;
            else
                throw config_error(vline, vcol, "geometry must be 'line' or 'plane'");
        }
        else if (key == "width" || key == "width_x" || key == "width_z")
        {
            const double v = detail::parse_double_token(val, vline, vcol);
            if (!(v > 0.0))
                throw config_error(vline, vcol, key + " must be positive");
            (key == "width" ? cfg.width : key == "width_x" ? cfg.width_x : cfg.width_z) = v;
        }
        else if (key == "ports_per_wavelength")
        {
            const double v = detail::parse_double_token(val, vline, vcol);
            if (!(v > 0.0))
                throw config_error(vline, vcol, "ports_per_wavelength must be positive");
            cfg.ports_per_wavelength = v;
        }
        else if (key == "model")
        {
            if (val == "jakes")
                cfg.model = PropagationModel::Kind::Jakes2D;
            else if (val == "clarke")
                cfg.model = PropagationModel::Kind::Clarke3D;
            else if (val == "restricted_azimuth")
                cfg.model = PropagationModel::Kind::RestrictedAzimuth;
            else
                throw config_error(vline, vcol,
                                   "model must be 'jakes', 'clarke' or 'restricted_azimuth'");
        }
        else if (key == "azimuth_span")
        {
            const double v = detail::parse_double_token(val, vline, vcol);
            if (!(v > 0.0) || v > 6.2831853071795872)
                throw config_error(vline, vcol, "azimuth_span must lie in (0, 2 pi] radians");
            cfg.azimuth_span = v;
        }
        else if (key == "users")
        {
            const long long v = detail::parse_int_token(val, vline, vcol);
            if (v < 1 || v > 64)
                throw config_error(vline, vcol, "users must lie in [1, 64]");
            cfg.users = static_cast<int>(v);
        }
        else if (key == "gamma_db")
        {
            cfg.gamma_value = detail::parse_double_token(val, vline, vcol);
            cfg.gamma_in_db = true;
        }
        else if (key == "gamma_lin")
        {
            const double v = detail::parse_double_token(val, vline, vcol);
            if (!(v > 0.0))
                throw config_error(vline, vcol, "gamma_lin must be positive");
            cfg.gamma_value = v;
            cfg.gamma_in_db = false;
        }
        else if (key == "mu2")
        {
            const double v = detail::parse_double_token(val, vline, vcol);
            if (!(v > 0.0) || !(v < 1.0))
                throw config_error(vline, vcol, "mu2 must lie in (0, 1)");
            cfg.mu2 = v;
        }
        else if (key == "rho_th")
        {
            if (val == "N/100")
            {
                cfg.rho_th_scaled = true;
                cfg.rho_th = 0.0;
            }
            else
            {
                const double v = detail::parse_double_token(val, vline, vcol);
                if (!(v > 0.0))
                    throw config_error(vline, vcol,
                                       "rho_th must be positive or the literal 'N/100'");
                cfg.rho_th = v;
                cfg.rho_th_scaled = false;
            }
        }
        else if (key == "blocks")
        {
            if (val == "algorithm1")
                cfg.blocks = BlockChoice::Algorithm1;
            else if (val == "equal")
                cfg.blocks = BlockChoice::Equal;
            else
                throw config_error(vline, vcol, "blocks must be 'algorithm1' or 'equal'");
        }
        else if (key == "mu2_average")
        {
            if (val == "magnitude")
                cfg.mu2_average = AverageKind::Magnitude;
            else if (val == "signed")
                cfg.mu2_average = AverageKind::Signed;
            else if (val == "squared")
                cfg.mu2_average = AverageKind::SquaredMagnitude;
            else
                throw config_error(vline, vcol,
                                   "mu2_average must be 'magnitude', 'signed' or 'squared'");
        }
        else if (key == "axis")
        {
            if (val == "ports_per_wavelength")
                cfg.axis = SweepAxis::PortsPerWavelength;
            else if (val == "gamma_db")
                cfg.axis = SweepAxis::GammaDb;
            else if (val == "users")
                cfg.axis = SweepAxis::Users;
            else if (val == "aperture_size")
                cfg.axis = SweepAxis::ApertureSize;
            else if (val == "block_size")
                cfg.axis = SweepAxis::BlockSize;
            else
                throw config_error(vline, vcol, "unknown sweep axis '" + val + "'");
        }
        else if (key == "values")
        {
            cfg.values.clear();
            for (const std::string &tok : detail::split_list(val))
            {
                if (tok.empty())
                    throw config_error(vline, vcol, "values list has an empty entry");
                cfg.values.push_back(detail::parse_double_token(tok, vline, vcol));
            }
            for (std::size_t i = 1; i < cfg.values.size(); i++)
                if (!(cfg.values[i] > cfg.values[i - 1]))
                    throw config_error(vline, vcol, "values must be strictly increasing");
        }
        else if (key == "methods")
        {
            cfg.methods.clear();
            for (const std::string &tok : detail::split_list(val))
            {
                SweepMethod m;
                if (tok == "quadrature")
                    m = SweepMethod::Quadrature;
                else if (tok == "simplified")
                    m = SweepMethod::Simplified;
                else if (tok == "iid")
                    m = SweepMethod::IID;
                else if (tok == "baseline")
                    m = SweepMethod::ConstantBaseline;
                else if (tok == "mc")
                    m = SweepMethod::MonteCarlo;
                else if (tok == "eig_count")
                    m = SweepMethod::EigCount;
                else if (tok == "gain")
                    m = SweepMethod::Gain;
                else
                    throw config_error(vline, vcol, "unknown method '" + tok + "'");
                for (SweepMethod prev : cfg.methods)
                    if (prev == m)
                        throw config_error(vline, vcol, "duplicate method '" + tok + "'");
                cfg.methods.push_back(m);
            }
            if (cfg.methods.empty())
                throw config_error(vline, vcol, "methods list is empty");
        }
        else if (key == "output")
        {
            cfg.output_path = val;
        }
        else if (key == "seed")
        {
            const long long v = detail::parse_int_token(val, vline, vcol);
            if (v < 0)
                throw config_error(vline, vcol, "seed must be nonnegative");
            cfg.seed = static_cast<std::uint64_t>(v);
        }
        else if (key == "trials" || key == "tail_trials")
        {
            const long long v = detail::parse_int_token(val, vline, vcol);
            if (v < 1)
                throw config_error(vline, vcol, key + " must be at least 1");
            (key == "trials" ? cfg.trials : cfg.tail_trials) = static_cast<long>(v);
        }
        else if (key == "partitions")
        {
            const long long v = detail::parse_int_token(val, vline, vcol);
            if (v < 1 || v > 4096)
                throw config_error(vline, vcol, "partitions must lie in [1, 4096]");
            cfg.partitions = static_cast<int>(v);
        }
        else
        {
            throw config_error(line_no, loc.key_col, "unknown key '" + key + "'");
        }

        if (pos > text.size())
            break;
    }

    if (locs_out)
        *locs_out = locs;
    return cfg;
}

namespace detail
{

inline config_error missing_key(const std::string &key, const std::string &why)
{
    return config_error(0, 0, "missing required key '" + key + "' (" + why + ")");
}

inline KeyLoc loc_of(const std::map<std::string, KeyLoc> &locs, const std::string &key)
{
    const auto it = locs.find(key);
    return it == locs.end() ? KeyLoc{} : it->second;
}

inline void forbid(const SweepConfig &cfg, const std::map<std::string, KeyLoc> &locs,
                   const std::string &key, const std::string &why)
{
    if (cfg.has(key))
    {
        const KeyLoc l = loc_of(locs, key);
        throw config_error(l.line, l.key_col, "key '" + key + "' " + why);
    }
}

inline void require(const SweepConfig &cfg, const std::string &key, const std::string &why)
{
    if (!cfg.has(key))
        throw missing_key(key, why);
}

// Shared geometry/model requirements for anything that builds a
// correlation matrix.
inline void check_scenario_matrix(const SweepConfig &cfg,
                                  const std::map<std::string, KeyLoc> &locs,
                                  bool need_width, bool need_density,
                                  bool need_mu2 = true)
{
    require(cfg, "geometry", "selects the aperture layout");
    require(cfg, "model", "selects the propagation model");
    if (need_mu2) // pure simulation never consults the block correlation
        require(cfg, "mu2", "sets the within-block correlation");
    if (need_density)
        require(cfg, "ports_per_wavelength", "sets the port density");

    if (cfg.geometry == ApertureGeometry::Kind::Line)
    {
        if (need_width)
            require(cfg, "width", "line apertures need their length");
        forbid(cfg, locs, "width_x", "applies to plane apertures only");
        forbid(cfg, locs, "width_z", "applies to plane apertures only");
    }
    else
    {
        if (need_width)
        {
            require(cfg, "width_x", "plane apertures need both extents");
            require(cfg, "width_z", "plane apertures need both extents");
        }
        forbid(cfg, locs, "width", "applies to line apertures only");
        if (cfg.model == PropagationModel::Kind::Jakes2D)
        {
            const KeyLoc l = loc_of(locs, "model");
            throw config_error(l.line, l.col,
                               "the jakes model is azimuth-only and supports line apertures");
        }
    }

    if (cfg.model == PropagationModel::Kind::RestrictedAzimuth)
        require(cfg, "azimuth_span", "restricted_azimuth needs its span");
    else
        forbid(cfg, locs, "azimuth_span", "applies to the restricted_azimuth model only");
}

inline void check_gamma(const SweepConfig &cfg, const std::map<std::string, KeyLoc> &locs,
                        bool allowed)
{
    if (cfg.has("gamma_db") && cfg.has("gamma_lin"))
    {
        const KeyLoc l = loc_of(locs, "gamma_lin");
        throw config_error(l.line, l.key_col, "give gamma_db or gamma_lin, not both");
    }
    if (!allowed)
    {
        forbid(cfg, locs, "gamma_db", "conflicts with the gamma_db sweep axis");
        forbid(cfg, locs, "gamma_lin", "conflicts with the gamma_db sweep axis");
        return;
    }
    if (!cfg.has("gamma_db") && !cfg.has("gamma_lin"))
        throw missing_key("gamma_db (or gamma_lin)", "sets the SIR threshold");
}

inline bool has_method(const SweepConfig &cfg, SweepMethod m)
{
    for (SweepMethod x : cfg.methods)
        if (x == m)
            return true;
    return false;
}

inline void check_integer_values(const SweepConfig &cfg,
                                 const std::map<std::string, KeyLoc> &locs, double min,
                                 const std::string &what)
{
    const KeyLoc l = loc_of(locs, "values");
    for (double v : cfg.values)
        if (v != std::floor(v) || v < min)
            throw config_error(l.line, l.col, what);
}

} // namespace detail

// Cross-key validation for `sweep` runs. Throws config_error naming the
// offending key or the missing one.
inline void finalize_sweep(const SweepConfig &cfg,
                           const std::map<std::string, detail::KeyLoc> &locs)
{
    using detail::forbid;
    using detail::has_method;
    using detail::loc_of;
    using detail::require;

    require(cfg, "axis", "selects the sweep variable");
    require(cfg, "values", "lists the sweep points");
    require(cfg, "methods", "selects what to evaluate");
    if (cfg.values.empty())
    {
        const detail::KeyLoc l = loc_of(locs, "values");
        throw config_error(l.line, l.col, "values list is empty");
    }

    const detail::KeyLoc axis_loc = loc_of(locs, "axis");
    const detail::KeyLoc methods_loc = loc_of(locs, "methods");

    if (has_method(cfg, SweepMethod::EigCount) && cfg.axis != SweepAxis::PortsPerWavelength &&
        cfg.axis != SweepAxis::ApertureSize)
        throw config_error(methods_loc.line, methods_loc.col,
                           "eig_count applies to geometry sweep axes only");
    if (has_method(cfg, SweepMethod::Gain) && cfg.axis != SweepAxis::BlockSize)
        throw config_error(methods_loc.line, methods_loc.col,
                           "gain applies to the block_size axis only");

    if (cfg.axis == SweepAxis::BlockSize)
    {
        // per-block curves never touch an aperture; reject stray keys
        for (const char *k : {"geometry", "model", "width", "width_x", "width_z",
                              "ports_per_wavelength", "rho_th", "blocks", "azimuth_span"})
            forbid(cfg, locs, k, "is not used by block_size sweeps");
        require(cfg, "users", "sets the interference order");
        require(cfg, "mu2", "sets the within-block correlation");
        detail::check_gamma(cfg, locs, true);
        detail::check_integer_values(cfg, locs, 1.0, "block sizes must be integers >= 1");
        if (cfg.users < 2)
        {
            const detail::KeyLoc l = loc_of(locs, "users");
            throw config_error(l.line, l.col, "block_size sweeps need at least 2 users");
        }
        for (SweepMethod m : cfg.methods)
            if (m == SweepMethod::MonteCarlo || m == SweepMethod::ConstantBaseline ||
                m == SweepMethod::EigCount)
                throw config_error(methods_loc.line, methods_loc.col,
                                   std::string("method '") + sweep_method_name(m) +
                                       "' is not available on the block_size axis");
        return;
    }

    detail::check_scenario_matrix(cfg, locs,
                                  /*need_width=*/cfg.axis != SweepAxis::ApertureSize,
                                  /*need_density=*/cfg.axis != SweepAxis::PortsPerWavelength);
    require(cfg, "rho_th", "sets the relevant-eigenvalue threshold");
    detail::check_gamma(cfg, locs, cfg.axis != SweepAxis::GammaDb);

    switch (cfg.axis)
    {
    case SweepAxis::PortsPerWavelength:
        forbid(cfg, locs, "ports_per_wavelength", "conflicts with the sweep axis");
        for (double v : cfg.values)
            if (!(v > 0.0))
                throw config_error(loc_of(locs, "values").line, loc_of(locs, "values").col,
                                   "port densities must be positive");
        require(cfg, "users", "sets the interference order");
        break;
    case SweepAxis::ApertureSize:
        if (cfg.geometry != ApertureGeometry::Kind::Line)
            throw config_error(axis_loc.line, axis_loc.col,
                               "aperture_size sweeps support line geometry only");
        forbid(cfg, locs, "width", "conflicts with the aperture_size sweep axis");
        for (double v : cfg.values)
            if (!(v > 0.0))
                throw config_error(loc_of(locs, "values").line, loc_of(locs, "values").col,
                                   "aperture sizes must be positive");
        require(cfg, "users", "sets the interference order");
        break;
    case SweepAxis::Users:
        forbid(cfg, locs, "users", "conflicts with the users sweep axis");
        detail::check_integer_values(cfg, locs, 1.0, "user counts must be integers >= 1");
        break;
    case SweepAxis::GammaDb:
        require(cfg, "users", "sets the interference order");
        break;
    case SweepAxis::BlockSize:
        break; // handled above
    }

    // the step-threshold route linearizes around U >= 2; reject U = 1 mixes
    const bool may_have_single_user =
        (cfg.axis == SweepAxis::Users && !cfg.values.empty() && cfg.values.front() < 2.0) ||
        (cfg.axis != SweepAxis::Users && cfg.users == 1);
    if (may_have_single_user && has_method(cfg, SweepMethod::Simplified))
        throw config_error(methods_loc.line, methods_loc.col,
                           "the simplified method needs at least 2 users");
}

// Cross-key validation for matrix-only commands (spectrum, block listing);
// ignores sweep keys so sweep configs can be reused.
inline void finalize_spectrum(const SweepConfig &cfg,
                              const std::map<std::string, detail::KeyLoc> &locs)
{
    detail::check_scenario_matrix(cfg, locs, /*need_width=*/true, /*need_density=*/true);
    detail::require(cfg, "rho_th", "sets the relevant-eigenvalue threshold");
}

// Cross-key validation for single-point Monte Carlo runs.
inline void finalize_mc(const SweepConfig &cfg,
                        const std::map<std::string, detail::KeyLoc> &locs)
{
    detail::check_scenario_matrix(cfg, locs, /*need_width=*/true, /*need_density=*/true,
                                  /*need_mu2=*/false);
    detail::require(cfg, "users", "sets the interference order");
    detail::check_gamma(cfg, locs, true);
}

// Canonical echo of a config: exactly the keys present in the source, in a
// fixed order, with loss-free numeric formatting. parse(serialize(cfg))
// reproduces cfg byte-for-byte in every field including keys_present.
inline std::string serialize_config(const SweepConfig &cfg)
{
    std::string out;
    const auto put = [&](const std::string &key, const std::string &val)
    {
        if (cfg.has(key))
            out += key + " = " + val + "\n";
    };

    put("geometry", cfg.geometry == ApertureGeometry::Kind::Line ? "line" : "plane");
    put("width", detail::fmt_double(cfg.width));
    put("width_x", detail::fmt_double(cfg.width_x));
    put("width_z", detail::fmt_double(cfg.width_z));
    put("ports_per_wavelength", detail::fmt_double(cfg.ports_per_wavelength));
    switch (cfg.model)
    {
    case PropagationModel::Kind::Jakes2D: put("model", "jakes"); break;
    case PropagationModel::Kind::Clarke3D: put("model", "clarke"); break;
    case PropagationModel::Kind::RestrictedAzimuth: put("model", "restricted_azimuth"); break;
    }
    put("azimuth_span", detail::fmt_double(cfg.azimuth_span));
    put("users", std::to_string(cfg.users));
    if (cfg.gamma_in_db)
        put("gamma_db", detail::fmt_double(cfg.gamma_value));
    else
        put("gamma_lin", detail::fmt_double(cfg.gamma_value));
    put("mu2", detail::fmt_double(cfg.mu2));
    put("rho_th", cfg.rho_th_scaled ? "N/100" : detail::fmt_double(cfg.rho_th));
    put("blocks", cfg.blocks == BlockChoice::Algorithm1 ? "algorithm1" : "equal");
    switch (cfg.mu2_average)
    {
    case AverageKind::Magnitude: put("mu2_average", "magnitude"); break;
    case AverageKind::Signed: put("mu2_average", "signed"); break;
    case AverageKind::SquaredMagnitude: put("mu2_average", "squared"); break;
    }
    put("axis", axis_name(cfg.axis));
    if (cfg.has("values"))
    {
        std::string v;
        for (std::size_t i = 0; i < cfg.values.size(); i++)
            v += (i ? "," : "") + detail::fmt_double(cfg.values[i]);
        out += "values = " + v + "\n";
    }
    if (cfg.has("methods"))
    {
        std::string v;
        for (std::size_t i = 0; i < cfg.methods.size(); i++)
            v += std::string(i ? "," : "") + sweep_method_name(cfg.methods[i]);
        out += "methods = " + v + "\n";
    }
    put("output", cfg.output_path);
    put("seed", std::to_string(cfg.seed));
    put("trials", std::to_string(cfg.trials));
    put("tail_trials", std::to_string(cfg.tail_trials));
    put("partitions", std::to_string(cfg.partitions));
    return out;
}

} // namespace fabcor

#endif
