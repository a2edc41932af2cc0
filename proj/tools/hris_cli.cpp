// SPDX-License-Identifier: Apache-2.0
//
// hris-uav: joint channel and direction estimation for HRIS-assisted UAV links
// Copyright (C) 2026 The hris-uav authors
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

#include <cstdio>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hris/array_geometry.hpp"
#include "hris/channel.hpp"
#include "hris/config.hpp"
#include "hris/crlb_metrics.hpp"
#include "hris/errors.hpp"
#include "hris/harness.hpp"
#include "hris/hris_signal.hpp"
#include "hris/report.hpp"
#include "hris/rng.hpp"

namespace
{
    enum ExitCode
    {
        exit_ok = 0,
        exit_config = 1,
        exit_runtime = 2,
        exit_io = 3
    };

    struct CommonArgs
    {
        std::string config_path;
        std::string profile;
        std::optional<std::uint64_t> seed;
        std::vector<double> power;
        std::vector<double> eps1;
    };

    hris::ExperimentConfig resolve(const CommonArgs &args)
    {
        hris::ExperimentConfig cfg = hris::load_config(args.config_path);
        if (!args.profile.empty())
            hris::apply_profile(cfg, args.profile);
        if (args.seed)
            cfg.master_seed = *args.seed;
        if (!args.power.empty())
            cfg.power_sweep_dbm = args.power;
        if (!args.eps1.empty())
            cfg.eps1_sweep = args.eps1;
        return cfg;
    }

    void add_common(CLI::App *cmd, CommonArgs &args, bool sweeps)
    {
        cmd->add_option("--config", args.config_path, "Experiment config (JSON) or run manifest")->required();
        cmd->add_option("--profile", args.profile, "Preset overrides")->check(CLI::IsMember({"desk", "paper"}));
        cmd->add_option("--seed", args.seed, "Master seed");
        if (sweeps)
        {
            cmd->add_option("--power", args.power, "Transmit powers [dBm], comma separated")->delimiter(',');
            cmd->add_option("--eps1", args.eps1, "Reflection coefficients, comma separated")->delimiter(',');
        }
    }

    double db(double linear)
    {
        return 10.0 * std::log10(linear);
    }

    double deg(double rad)
    {
        return rad * 180.0 / hris::pi;
    }

    int cmd_validate(const CommonArgs &args)
    {
        const hris::ExperimentConfig cfg = resolve(args);
        const hris::ArrayGeometry geom = cfg.array();
        const auto los1 = hris::los_path_from_positions(cfg.scenario.hris_pos, cfg.scenario.uav_pos);
        const auto los2 = hris::los_path_from_positions(cfg.scenario.hris_pos, cfg.scenario.bs_pos);
        const double varphi = hris::z_axis_angle(cfg.scenario.bs_pos, cfg.scenario.hris_pos);
        const double rho1 = hris::pathloss(los1.distance, cfg.fc_ghz);
        const double rho2 = hris::pathloss(los2.distance, cfg.fc_ghz);
        const double sr2 = cfg.sigma_r2_mw(), sb2 = cfg.sigma_b2_mw();

        std::printf("config ok: M = %d x %d = %d, N = %d, K = %d, L1 = %d, L2 = %d, trials = %d\n", cfg.m_x, cfg.m_y,
                    geom.m(), cfg.n_bs, cfg.k_instants, cfg.l1, cfg.l2, cfg.trials);
        std::printf("wavelength           %.6g m, spacings d1x %.6g m, d1y %.6g m, d2z %.6g m\n", geom.wavelength,
                    geom.d1x, geom.d1y, geom.d2z);
        std::printf("UAV-HRIS LoS         d = %.6g m, theta = %.4f deg, phi = %.4f deg, pathloss %.2f dB\n",
                    los1.distance, deg(los1.theta), deg(los1.phi), db(rho1));
        std::printf("HRIS-BS LoS          d = %.6g m, theta = %.4f deg, phi = %.4f deg, BS elevation = %.4f deg, "
                    "pathloss %.2f dB\n",
                    los2.distance, deg(los2.theta), deg(los2.phi), deg(varphi), db(rho2));
        std::printf("noise                sigma_R^2 = %.2f dBm, sigma_B^2 = %.2f dBm\n", hris::mw_to_dbm(sr2),
                    hris::mw_to_dbm(sb2));
        std::printf("expected SNR (LoS only, before power splitting)\n");
        std::printf("  %10s %16s %20s %22s\n", "P [dBm]", "per element [dB]", "sensing/instant [dB]",
                    "BS per antenna [dB]");
        for (double p_dbm : cfg.power_sweep_dbm)
        {
            const double p = hris::dbm_to_mw(p_dbm);
            std::printf("  %10.2f %16.2f %20.2f %22.2f\n", p_dbm, db(p / (rho1 * sr2)),
                        db(p * geom.m() / (rho1 * sr2)), db(p * geom.m() / (rho1 * rho2 * sb2)));
        }
        return exit_ok;
    }

    int cmd_crlb(const CommonArgs &args)
    {
        const hris::ExperimentConfig cfg = resolve(args);
        const hris::ArrayGeometry geom = cfg.array();
        const hris::CMatrix omega = hris::dft_pilot_schedule(geom.m(), cfg.k_instants);
        std::printf("%10s %6s %14s %14s %14s %14s\n", "P [dBm]", "eps1", "crlb_h1", "crlb_h2", "crlb_h1_norm",
                    "crlb_h2_norm");
        for (std::size_t pi = 0; pi < cfg.power_sweep_dbm.size(); ++pi)
            for (std::size_t ei = 0; ei < cfg.eps1_sweep.size(); ++ei)
            {
                const std::uint64_t seed = hris::trial_seed(cfg.master_seed, pi, ei, 0);
                const auto ch = hris::draw_scenario_channels(cfg.scenario, geom, cfg.channel_options(),
                                                             hris::derive_seed(seed, {1}));
                const double eps1 = cfg.eps1_sweep[ei];
                const double eps2 = std::sqrt(1.0 - eps1 * eps1);
                const auto rep = hris::crlb_report(ch.h2, ch.h1, omega, omega, eps1, eps2,
                                                   hris::dbm_to_mw(cfg.power_sweep_dbm[pi]), cfg.sigma_b2_mw());
                std::printf("%10.2f %6.3f %14.6g %14.6g %14.6g %14.6g\n", cfg.power_sweep_dbm[pi], eps1, rep.crlb_h1,
                            rep.crlb_h2, rep.crlb_h1 / ch.h1.squaredNorm(), rep.crlb_h2 / ch.h2.squaredNorm());
            }
        if (cfg.k_instants < geom.m())
            std::printf("note: K = %d < M = %d, the H2 bound does not exist (reported as inf)\n", cfg.k_instants,
                        geom.m());
        return exit_ok;
    }

    struct RunArgs
    {
        std::string out = "results";
        std::optional<int> trials;
        std::optional<int> refinement_rounds;
        std::string format = "csv";
        bool plots = false;
        unsigned workers = 0;
        bool quiet = false;
    };

    int cmd_run(const CommonArgs &args, const RunArgs &run)
    {
        hris::ExperimentConfig cfg = resolve(args);
        if (run.trials)
            cfg.trials = *run.trials;
        if (run.refinement_rounds)
            cfg.refinement_rounds = *run.refinement_rounds;
        cfg.validate();

        // Fail on an unusable output directory before any trial runs
        hris::ensure_writable_dir(run.out);

        const std::size_t total = cfg.power_sweep_dbm.size() * cfg.eps1_sweep.size() * static_cast<std::size_t>(cfg.trials);
        std::size_t step = std::max<std::size_t>(1, total / 20);
        const hris::SweepResult result = hris::run_sweep(cfg, run.workers, [&](std::size_t done, std::size_t n) {
            if (!run.quiet && (done % step == 0 || done == n))
                std::fprintf(stderr, "\r%zu / %zu trials", done, n);
        });
        if (!run.quiet)
            std::fprintf(stderr, "\n");

        const auto format = run.format == "json" ? hris::OutputFormat::json : hris::OutputFormat::csv;
        for (const auto &path : hris::emit_results(cfg, result, run.out, format, run.plots))
            std::printf("wrote %s\n", path.string().c_str());

        std::size_t flagged = 0;
        for (const auto &o : result.outcomes)
            flagged += (o.solver_error || o.aoa_failed || o.degenerate_sensing || o.h2_ill_conditioned) ? 1 : 0;
        if (flagged)
            std::printf("%zu of %zu trials carry warnings (see the per-trial output)\n", flagged, result.outcomes.size());
        return exit_ok;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"HRIS-assisted UAV link: channel estimation, LoS direction finding and bounds"};
    app.set_version_flag("--version", hris::version());
    app.require_subcommand(1);

    CommonArgs run_common, validate_common, crlb_common;
    RunArgs run_args;

    CLI::App *run = app.add_subcommand("run", "Monte-Carlo sweep over transmit power and power split");
    add_common(run, run_common, true);
    run->add_option("--out", run_args.out, "Output directory");
    run->add_option("--trials", run_args.trials, "Trials per (power, eps1) cell")->check(CLI::PositiveNumber);
    run->add_option("--refinement-rounds", run_args.refinement_rounds, "Refinement passes (0: no refinement)")
        ->check(CLI::NonNegativeNumber);
    run->add_option("--format", run_args.format, "Result format")->check(CLI::IsMember({"csv", "json"}));
    run->add_flag("--plots", run_args.plots, "Also write SVG plots");
    run->add_option("--workers", run_args.workers, "Worker threads (0: all cores)");
    run->add_flag("--quiet", run_args.quiet, "No progress output");

    CLI::App *validate = app.add_subcommand("validate", "Check a config and print derived quantities");
    add_common(validate, validate_common, true);

    CLI::App *crlb = app.add_subcommand("crlb", "Print the bounds for every sweep cell");
    add_common(crlb, crlb_common, true);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_config;
    }

    try
    {
        if (*run)
            return cmd_run(run_common, run_args);
        if (*validate)
            return cmd_validate(validate_common);
        return cmd_crlb(crlb_common);
    }
    catch (const hris::ConfigError &e)
    {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    }
    catch (const hris::IoError &e)
    {
        std::cerr << "I/O error: " << e.what() << "\n";
        return exit_io;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_runtime;
    }
}
