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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "csv_util.hpp"
#include "grid_oracle.hpp"
#include "hris/anm.hpp"
#include "hris/aoa.hpp"
#include "hris/channel.hpp"
#include "hris/config.hpp"
#include "hris/crlb_metrics.hpp"
#include "hris/estimator.hpp"
#include "hris/harness.hpp"
#include "hris/report.hpp"
#include "hris/rng.hpp"

using namespace hris;

namespace
{
    using clock_type = std::chrono::steady_clock;

    double seconds_since(clock_type::time_point t0)
    {
        return std::chrono::duration<double>(clock_type::now() - t0).count();
    }

    struct Verdict
    {
        bool pass = false;
        std::string detail;
    };

    std::string fmt(const char *f, auto... args)
    {
        char buf[512];
        std::snprintf(buf, sizeof buf, f, args...);
        return buf;
    }

    std::string read_file(const std::filesystem::path &p)
    {
        std::ifstream in(p);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    // Reference setting from the shipped config, falling back to the built-in defaults
    ExperimentConfig reference_config()
    {
        const std::filesystem::path p = std::filesystem::path(HRIS_SOURCE_DIR) / "configs" / "paper.json";
        return std::filesystem::exists(p) ? load_config(p) : ExperimentConfig{};
    }

    // 1. Noiseless exact recovery with full DFT schedules
    Verdict noiseless_recovery()
    {
        const ExperimentConfig cfg = reference_config();
        const ArrayGeometry g = cfg.array();
        ChannelDrawOptions co = cfg.channel_options();
        co.l1 = co.l2 = 1;
        const ChannelRealization ch = draw_scenario_channels(cfg.scenario, g, co, cfg.master_seed);
        const CMatrix om = dft_pilot_schedule(g.m(), g.m());
        const HrisConfig hc = HrisConfig::from_eps1(0.4, om, om);
        const double p = dbm_to_mw(-10.0);
        const MeasurementSet meas =
            stack_measurements(simulate_y_r(ch.h1, hc, p, 0.0, 1), simulate_y_b(ch.h1, ch.h2, hc, p, 0.0, 2), p, 0.0, 0.0);

        EstimatorOptions eo = cfg.estimator_options();
        eo.refinement_rounds = 1;
        eo.n_paths = 1;
        const auto t0 = clock_type::now();
        const EstimationResult r = run_algorithm1(meas, hc, g, eo);
        const double secs = seconds_since(t0);

        const double e1 = nmse(ch.h1, r.h1_refined), e2 = nmse(ch.h2, r.h2);
        double aoa_err = INFINITY;
        if (r.aoa_refined)
            aoa_err = std::max(std::abs(r.aoa_refined->theta - ch.paths1[0].theta),
                               std::abs(r.aoa_refined->phi - ch.paths1[0].phi));
        const bool ok = e1 < 1e-4 && e2 < 1e-3 && aoa_err < 1e-3 && secs < 60.0;
        return {ok, fmt("NMSE(h1)=%.2e NMSE(H2)=%.2e AoA err=%.2e rad, %.2f s", e1, e2, aoa_err, secs)};
    }

    // 2. Stacked linear model against an independent per-instant simulation
    Verdict linear_model_identity()
    {
        Rng rng(derive_seed(2, {}));
        std::uniform_int_distribution<int> side(1, 3), nbs(1, 3);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        double worst = 0.0;
        for (int inst = 0; inst < 100; ++inst)
        {
            const int m_x = side(rng), m_y = side(rng), n = nbs(rng);
            const int m = m_x * m_y;
            const int k = std::uniform_int_distribution<int>(1, m)(rng);
            CMatrix o1(m, k), o2(m, k);
            for (int j = 0; j < k; ++j)
                for (int i = 0; i < m; ++i)
                {
                    o1(i, j) = expj(two_pi * u(rng));
                    o2(i, j) = expj(two_pi * u(rng));
                }
            const HrisConfig hc = HrisConfig::from_eps1(u(rng), o1, o2);
            const CVector h1 = complex_gaussian(m, 1.0, rng);
            const CMatrix h2 = complex_gaussian(n * m, 1.0, rng).reshaped(n, m);
            const double p = std::pow(10.0, -3.0 + 3.0 * u(rng));

            // per instant: y_R(k) = sqrt(P) eps2 w2_k^H h1, y_B(:, k) = sqrt(P) eps1 H2 diag(w1_k) h1
            CVector y(k + n * k);
            for (int kk = 0; kk < k; ++kk)
            {
                cdouble acc = 0.0;
                for (int i = 0; i < m; ++i)
                    acc += std::conj(o2(i, kk)) * h1(i);
                y(kk) = std::sqrt(p) * hc.eps2() * acc;
                for (int r = 0; r < n; ++r)
                {
                    cdouble b = 0.0;
                    for (int i = 0; i < m; ++i)
                        b += h2(r, i) * o1(i, kk) * h1(i);
                    y(k + kk * n + r) = std::sqrt(p) * hc.eps1() * b;
                }
            }
            const CVector model = std::sqrt(p) * build_a_rb(h2, hc) * h1;
            worst = std::max(worst, (y - model).norm() / y.norm());

            // the library simulation path must agree as well
            const MeasurementSet ms = stack_measurements(simulate_y_r(h1, hc, p, 0.0, 1), simulate_y_b(h1, h2, hc, p, 0.0, 2));
            worst = std::max(worst, (ms.y_rb - model).norm() / y.norm());
        }
        return {worst <= 1e-12, fmt("100 instances, worst relative residual %.2e", worst)};
    }

    // 3. CRLB closed form and inverse power scaling
    Verdict crlb_closed_forms()
    {
        const ExperimentConfig cfg = reference_config();
        const ArrayGeometry g = cfg.array();
        const ChannelRealization ch = draw_scenario_channels(cfg.scenario, g, cfg.channel_options(), cfg.master_seed);
        const CMatrix om = dft_pilot_schedule(g.m(), g.m());
        const double s2 = cfg.sigma_r2_mw();
        double worst_closed = 0.0;
        for (double pdbm : {-30.0, -10.0, 0.0})
        {
            const double p = dbm_to_mw(pdbm);
            const HrisConfig hc(0.0, 1.0, om, om);
            const double b = crlb_h1(build_a_rb(ch.h2, hc), p, s2);
            worst_closed = std::max(worst_closed, std::abs(b / (s2 / (2.0 * p * hc.eps2() * hc.eps2())) - 1.0));
        }
        double worst_scale = 0.0;
        for (double eps1 : {0.2, 0.4, 0.6, 0.8})
        {
            const HrisConfig hc = HrisConfig::from_eps1(eps1, om, om);
            const CMatrix a = build_a_rb(ch.h2, hc);
            const double p = dbm_to_mw(-10.0);
            const double r1 = crlb_h1(a, 2.0 * p, s2) / crlb_h1(a, p, s2);
            const double r2 = crlb_h2(om, ch.h1, g.n_bs, eps1, 2.0 * p, s2) / crlb_h2(om, ch.h1, g.n_bs, eps1, p, s2);
            worst_scale = std::max({worst_scale, std::abs(r1 / 0.5 - 1.0), std::abs(r2 / 0.5 - 1.0)});
        }
        return {worst_closed <= 1e-9 && worst_scale <= 1e-12,
                fmt("closed form rel err %.2e, 1/P scaling rel err %.2e", worst_closed, worst_scale)};
    }

    struct TradeoffRuns
    {
        SweepResult sweep;
        double seconds = 0.0;
        std::size_t idx04 = 0, idx08 = 1;
    };

    TradeoffRuns tradeoff_runs()
    {
        ExperimentConfig cfg = reference_config();
        cfg.trials = 50;
        cfg.power_sweep_dbm = {-10.0};
        cfg.eps1_sweep = {0.4, 0.8};
        TradeoffRuns out;
        const auto t0 = clock_type::now();
        out.sweep = run_sweep(cfg, 4);
        out.seconds = seconds_since(t0);
        return out;
    }

    std::vector<double> column(const SweepResult &r, std::size_t eps_index, double TrialRecord::*field)
    {
        std::vector<double> v;
        for (const TrialOutcome &o : r.outcomes)
            if (o.eps_index == eps_index)
                v.push_back(o.record.*field);
        return v;
    }

    // 4. Power-splitting tradeoff with bootstrap separation
    Verdict power_split_tradeoff(const TradeoffRuns &runs)
    {
        const auto h2_04 = column(runs.sweep, 0, &TrialRecord::nmse_h2);
        const auto h2_08 = column(runs.sweep, 1, &TrialRecord::nmse_h2);
        const auto h1_04 = column(runs.sweep, 0, &TrialRecord::nmse_h1_refined);
        const auto h1_08 = column(runs.sweep, 1, &TrialRecord::nmse_h1_refined);
        const ConfidenceInterval d_h2 = bootstrap_diff_ci(h2_04, h2_08, derive_seed(4, {2}));
        const ConfidenceInterval d_h1 = bootstrap_diff_ci(h1_08, h1_04, derive_seed(4, {1}));
        const bool ok = d_h2.lower > 0.0 && d_h1.lower > 0.0 && runs.seconds < 20.0 * 60.0;
        return {ok, fmt("NMSE(H2) 0.4-0.8 = %.3g [%.3g, %.3g]; NMSE(h1) 0.8-0.4 = %.3g [%.3g, %.3g]; %.0f s",
                        d_h2.estimate, d_h2.lower, d_h2.upper, d_h1.estimate, d_h1.lower, d_h1.upper, runs.seconds)};
    }

    // 5. Refinement gain on the LoS AoA
    Verdict refinement_gain(const TradeoffRuns &runs)
    {
        const std::vector<CellAggregate> &cells = runs.sweep.cells;
        const CellAggregate &c04 = cells[0], &c08 = cells[1];
        const bool refine_ok = c04.rmse_theta_refined_rad <= c04.rmse_theta_norefine_rad &&
                               c04.rmse_phi_refined_rad <= c04.rmse_phi_norefine_rad;
        const bool eps_ok = c04.rmse_theta_refined_rad <= c08.rmse_theta_refined_rad &&
                            c04.rmse_phi_refined_rad <= c08.rmse_phi_refined_rad;
        return {refine_ok && eps_ok,
                fmt("eps1=0.4 theta %.7g<=%.7g phi %.7g<=%.7g; eps1=0.8 theta %.7g phi %.7g",
                    c04.rmse_theta_refined_rad, c04.rmse_theta_norefine_rad, c04.rmse_phi_refined_rad,
                    c04.rmse_phi_norefine_rad, c08.rmse_theta_refined_rad, c08.rmse_phi_refined_rad)};
    }

    // 6. Both atomic-norm programs against a 1 degree grid oracle (2 x 2 HRIS, N = 2, K = 4)
    Verdict grid_oracle()
    {
        const ArrayGeometry g = ArrayGeometry::half_wavelength(2, 2, 2, 1.0);
        const CMatrix om = dft_pilot_schedule(4, 4);
        const HrisConfig hc(0.6, 0.8, om, om);
        const double sigma = 0.1; // 20 dB per-sample SNR for unit-modulus channels
        double worst_h1 = 0.0, worst_h2 = 0.0;
        int fail_h1 = 0, fail_h2 = 0;
        for (std::uint64_t s = 0; s < 20; ++s)
        {
            Rng rng(derive_seed(99, {s}));
            std::uniform_real_distribution<double> u(0.0, 1.0);
            const CVector h1 = expj(two_pi * u(rng)) * steering_upa(pi * u(rng), (u(rng) - 0.5) * two_pi / 3.0, g);
            const CMatrix h2 = expj(two_pi * u(rng)) * steering_bs(pi * u(rng), 2, 0.5, 1.0) *
                               steering_upa(pi * u(rng), (u(rng) - 0.5) * two_pi / 3.0, g).adjoint();

            const CMatrix a = build_a_rb(h2, hc);
            const CVector y = a * h1 + complex_gaussian(a.rows(), sigma * sigma, rng);
            const double mu1 = anm_regularizer(sigma, rms_column_norm(a), 4);
            const double d1 = std::abs(solve_anm_h1(y, a, mu1, g).objective - testing::grid_h1(y, a, mu1, 2, 2).objective);

            const CMatrix c = 0.6 * h1.asDiagonal() * om;
            const CMatrix yb = h2 * c + complex_gaussian(8, sigma * sigma, rng).reshaped(2, 4);
            const double mu2 = anm_regularizer(sigma, c.norm() / 2.0, 8);
            const double d2 = std::abs(solve_anm_h2(yb, h1, om, 0.6, 1.0, mu2, g).objective -
                                       testing::grid_h2(yb, c, mu2, 2, 2, 2).objective);

            worst_h1 = std::max(worst_h1, d1);
            worst_h2 = std::max(worst_h2, d2);
            fail_h1 += d1 > 1e-4;
            fail_h2 += d2 > 1e-4;
        }
        return {fail_h1 == 0 && fail_h2 == 0,
                fmt("h1 program: %d/20 within 1e-4 (worst %.2e); H2 program: %d/20 within 1e-4 (worst %.2e)",
                    20 - fail_h1, worst_h1, 20 - fail_h2, worst_h2)};
    }

    // 7. Root-MUSIC exactness on noiseless single-path channels
    Verdict root_music_exactness()
    {
        const ExperimentConfig cfg = reference_config();
        const ArrayGeometry g = cfg.array();
        Rng rng(derive_seed(7, {}));
        std::uniform_real_distribution<double> th(0.0, pi), ph(-80.0 * pi / 180.0, 80.0 * pi / 180.0),
            dist(1.0, 30.0);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i)
        {
            PathParams p;
            p.distance = dist(rng);
            p.rho = pathloss(p.distance, cfg.fc_ghz);
            p.theta = th(rng);
            p.phi = ph(rng);
            p.is_los = true;
            const AoaEstimate e = estimate_los_aoa(build_h1(std::vector{p}, g), g, 1, cfg.aoa);
            worst = std::max({worst, std::abs(e.theta - p.theta), std::abs(e.phi - p.phi)});
        }
        return {worst <= 1e-6, fmt("100 channels, worst angle error %.2e rad", worst)};
    }

    // 8. Byte-identical per-trial output and golden schema headers
    Verdict determinism_and_schema()
    {
        ExperimentConfig cfg = reference_config();
        cfg.trials = 4;
        cfg.power_sweep_dbm = {-20.0, -10.0};
        cfg.eps1_sweep = {0.4, 0.8};
        const auto records = [](const SweepResult &r) {
            std::vector<TrialRecord> v;
            for (const TrialOutcome &o : r.outcomes)
                v.push_back(o.record);
            return trials_csv(v);
        };
        const std::string a = records(run_sweep(cfg, 1));
        const std::string b = records(run_sweep(cfg, 3));
        const bool same = testing::without_timing(a) == testing::without_timing(b);

        const auto head2 = [](const std::string &t) {
            const std::size_t p = t.find('\n', t.find('\n') + 1);
            return t.substr(0, p + 1);
        };
        const std::filesystem::path data(HRIS_TEST_DATA_DIR);
        const bool golden = head2(a) == read_file(data / "trials_header.golden") &&
                            head2(aggregate_csv({})) == read_file(data / "aggregate_header.golden");
        return {same && golden, fmt("per-trial CSV identical across runs: %s; golden headers match: %s",
                                    same ? "yes" : "no", golden ? "yes" : "no")};
    }
}

int main()
{
    std::setvbuf(stdout, nullptr, _IOLBF, 0);
    int failures = 0;
    const auto report = [&](int id, const char *name, const std::function<Verdict()> &fn) {
        Verdict v;
        try
        {
            v = fn();
        }
        catch (const std::exception &e)
        {
            v = {false, std::string("exception: ") + e.what()};
        }
        failures += !v.pass;
        std::printf("CRITERION %d %s: %s (%s)\n", id, v.pass ? "PASS" : "FAIL", name, v.detail.c_str());
    };

    report(1, "noiseless exact recovery", noiseless_recovery);
    report(2, "linear-model identity", linear_model_identity);
    report(3, "CRLB closed forms", crlb_closed_forms);

    TradeoffRuns runs;
    bool runs_ok = true;
    std::string runs_error;
    try
    {
        runs = tradeoff_runs();
    }
    catch (const std::exception &e)
    {
        runs_ok = false;
        runs_error = e.what();
    }
    const auto needs_runs = [&](Verdict (*fn)(const TradeoffRuns &)) {
        return [&, fn]() -> Verdict {
            if (!runs_ok)
                return {false, "sweep failed: " + runs_error};
            return fn(runs);
        };
    };
    report(4, "power-splitting tradeoff", needs_runs(power_split_tradeoff));
    report(5, "refinement gain", needs_runs(refinement_gain));
    report(6, "ANM vs grid oracle", grid_oracle);
    report(7, "root-MUSIC exactness", root_music_exactness);
    report(8, "determinism and schema", determinism_and_schema);

    std::printf("%d of 8 criteria passed\n", 8 - failures);
    return failures == 0 ? 0 : 1;
}
