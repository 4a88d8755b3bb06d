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

// facli: command-line front end for the fabcor library.
//
//   facli sweep    --config cfg [--out csv] [--seed N] [--trials N] [--tail]
//   facli spectrum --config cfg [--out csv]
//   facli blocks   --config cfg [--out csv]
//   facli mc       --config cfg [--out csv] [--seed N] [--trials N] [--tail]
//   facli check    [--out csv] [--seed N]
//
// Exit codes: 0 success, 1 acceptance-criterion failure (check only),
// 2 configuration error (bad file, bad key, bad command line), 3 numerical
// fault inside a solver. Config errors print the offending line and column.

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "fabcor/acceptance.hpp"
#include "fabcor/config.hpp"
#include "fabcor/sweep.hpp"

namespace
{

struct CommonFlags
{
    std::string config_path;
    std::string out_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
    long trials = 0;
    bool trials_set = false;
    bool tail = false;
};

void add_config_flags(CLI::App *cmd, CommonFlags &f, bool with_mc_flags)
{
    cmd->add_option("--config", f.config_path, "key=value configuration file")
        ->required();
    cmd->add_option("--out", f.out_path, "output CSV path");
    if (with_mc_flags)
    {
        cmd->add_option("--seed", f.seed, "override the config seed")
            ->each([&f](const std::string &) { f.seed_set = true; });
        cmd->add_option("--trials", f.trials, "override the config trial count")
            ->check(CLI::PositiveNumber)
            ->each([&f](const std::string &) { f.trials_set = true; });
        cmd->add_flag("--tail", f.tail,
                      "use the config's tail_trials budget (wins over --trials)");
    }
}

std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw fabcor::invalid_input("cannot read config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Parse a config and apply command-line overrides that affect sampling.
fabcor::SweepConfig load_config(const CommonFlags &f,
                                std::map<std::string, fabcor::detail::KeyLoc> &locs)
{
    fabcor::SweepConfig cfg = fabcor::parse_config_text(read_file(f.config_path), &locs);
    if (f.seed_set)
        cfg.seed = f.seed;
    if (f.trials_set)
        cfg.trials = f.trials;
    if (f.tail)
        cfg.trials = cfg.tail_trials;
    return cfg;
}

void emit(const std::string &out_path, const std::string &csv)
{
    if (out_path.empty())
        std::fputs(csv.c_str(), stdout);
    else
        fabcor::write_text_file(out_path, csv);
}

int run_sweep_cmd(const CommonFlags &f)
{
    std::map<std::string, fabcor::detail::KeyLoc> locs;
    const fabcor::SweepConfig cfg = load_config(f, locs);
    fabcor::finalize_sweep(cfg, locs);
    const std::string path = f.out_path.empty() ? cfg.output_path : f.out_path;
    fabcor::run_sweep_to_file(cfg, path);
    std::fprintf(stderr, "wrote %s\n", path.c_str());
    return 0;
}

int run_spectrum_cmd(const CommonFlags &f)
{
    std::map<std::string, fabcor::detail::KeyLoc> locs;
    const fabcor::SweepConfig cfg = load_config(f, locs);
    fabcor::finalize_spectrum(cfg, locs);
    const std::string path = f.out_path.empty() ? cfg.output_path : f.out_path;
    const std::string csv = fabcor::render_spectrum_csv(fabcor::run_spectrum(cfg));
    emit(path, csv);
    if (!path.empty())
        std::fprintf(stderr, "wrote %s\n", path.c_str());
    return 0;
}

int run_blocks_cmd(const CommonFlags &f)
{
    std::map<std::string, fabcor::detail::KeyLoc> locs;
    const fabcor::SweepConfig cfg = load_config(f, locs);
    fabcor::finalize_spectrum(cfg, locs); // same scenario inputs as spectrum
    emit(f.out_path, fabcor::render_blocks_csv(fabcor::run_spectrum(cfg).blocks));
    return 0;
}

int run_mc_cmd(const CommonFlags &f)
{
    std::map<std::string, fabcor::detail::KeyLoc> locs;
    const fabcor::SweepConfig cfg = load_config(f, locs);
    fabcor::finalize_mc(cfg, locs);

    const fabcor::ApertureGeometry geom =
        fabcor::detail::geometry_of(cfg, cfg.ports_per_wavelength, cfg.width);
    const fabcor::CorrelationMatrix sigma =
        fabcor::build_correlation(geom, fabcor::detail::model_of(cfg));
    fabcor::SimConfig sim{cfg.trials, cfg.seed, sigma,
                          cfg.users,  cfg.gamma_linear(), cfg.partitions};
    const fabcor::OutageEstimate est = fabcor::empirical_pout(sim);

    char row[160];
    std::snprintf(row, sizeof row, "gamma,method,value,ci95\n%.12g,mc,%.12g,%.12g\n",
                  cfg.gamma_linear(), est.p_hat, est.half_ci95);
    emit(f.out_path, row);
    return 0;
}

int run_check_cmd(const std::string &out_path, std::uint64_t seed)
{
    const std::vector<fabcor::CriterionResult> results = fabcor::run_acceptance(seed);
    int failures = 0;
    for (const fabcor::CriterionResult &r : results)
    {
        std::printf("[%s] criterion %2d: %s -- %s\n", r.pass ? "pass" : "FAIL", r.id,
                    r.name.c_str(), r.detail.c_str());
        if (!r.pass)
            failures++;
    }
    fabcor::write_text_file(out_path, fabcor::render_acceptance_csv(results));
    std::printf("%d of %zu criteria passed; report in %s\n",
                static_cast<int>(results.size()) - failures, results.size(),
                out_path.c_str());
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"fabcor: fluid-antenna correlation modelling and outage analysis"};
    app.require_subcommand(1);

    CommonFlags sweep_f, spectrum_f, blocks_f, mc_f;
    add_config_flags(app.add_subcommand("sweep", "evaluate outage curves over an axis"),
                     sweep_f, true);
    add_config_flags(
        app.add_subcommand("spectrum", "paired true/approximated eigenvalue columns"),
        spectrum_f, false);
    add_config_flags(app.add_subcommand("blocks", "block partition for a scenario"),
                     blocks_f, false);
    add_config_flags(app.add_subcommand("mc", "single-point Monte Carlo estimate"), mc_f,
                     true);

    std::string check_out = "acceptance.csv";
    std::uint64_t check_seed = 1;
    CLI::App *check = app.add_subcommand("check", "run the eleven-point self-check");
    check->add_option("--out", check_out, "acceptance report CSV path");
    check->add_option("--seed", check_seed, "Monte Carlo seed for the self-check");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // help/version exit clean, usage errors are code 2
    }

    try
    {
        if (app.got_subcommand("sweep"))
            return run_sweep_cmd(sweep_f);
        if (app.got_subcommand("spectrum"))
            return run_spectrum_cmd(spectrum_f);
        if (app.got_subcommand("blocks"))
            return run_blocks_cmd(blocks_f);
        if (app.got_subcommand("mc"))
            return run_mc_cmd(mc_f);
        return run_check_cmd(check_out, check_seed);
    }
    catch (const fabcor::config_error &e)
    {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    }
    catch (const fabcor::numerical_fault &e)
    {
        std::fprintf(stderr, "numerical fault [%s]: %s\n", e.module().c_str(), e.what());
        return 3;
    }
    catch (const fabcor::invalid_input &e)
    {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    }
    return 0;
}
