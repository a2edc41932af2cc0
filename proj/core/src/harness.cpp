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

#include "hris/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <tuple>

#include "hris/channel.hpp"
#include "hris/errors.hpp"
#include "hris/estimator.hpp"
#include "hris/hris_signal.hpp"
#include "hris/rng.hpp"

namespace hris
{
    namespace
    {
        constexpr double nan = std::numeric_limits<double>::quiet_NaN();
        constexpr double inf = std::numeric_limits<double>::infinity();

        // Sub-seed tags
        constexpr std::uint64_t tag_channel = 1;
        constexpr std::uint64_t tag_noise_r = 2;
        constexpr std::uint64_t tag_noise_b = 3;
        constexpr std::uint64_t tag_bootstrap = 0xB0075742;

        double mean_of(const std::vector<double> &v)
        {
            if (v.empty())
                return nan;
            double s = 0.0;
            for (double x : v)
                s += x;
            return s / static_cast<double>(v.size());
        }

        double finite_rms(const std::vector<double> &v)
        {
            std::vector<double> kept;
            for (double x : v)
                if (std::isfinite(x))
                    kept.push_back(x);
            return kept.empty() ? nan : rms(kept);
        }

        CrlbReport bounds_at_truth(const ChannelRealization &ch, const HrisConfig &hc, double power_p, double sr2, double sb2)
        {
            if (sr2 == sb2)
                return crlb_report(ch.h2, ch.h1, hc.omega1(), hc.omega2(), hc.eps1(), hc.eps2(), power_p, sr2);
            // Unequal branch noise: bound for the whitened stacked model
            CrlbReport r = crlb_report(ch.h2, ch.h1, hc.omega1(), hc.omega2(), hc.eps1(), hc.eps2(), power_p, sb2);
            CMatrix a = build_a_rb(ch.h2, hc);
            a.topRows(hc.k()) /= std::sqrt(sr2);
            a.bottomRows(a.rows() - hc.k()) /= std::sqrt(sb2);
            try
            {
                r.crlb_h1 = crlb_h1(a, power_p, 1.0);
                r.h1_bounded = true;
            }
            catch (const UnboundedCrlb &)
            {
                r.crlb_h1 = inf;
                r.h1_bounded = false;
            }
            return r;
        }
    }

    std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t power_index, std::size_t eps_index, std::size_t trial)
    {
        return derive_seed(master_seed, {power_index, eps_index, trial});
    }

    TrialOutcome run_trial(const ExperimentConfig &cfg, double power_dbm, double eps1, int trial, std::uint64_t seed)
    {
        const auto start = std::chrono::steady_clock::now();
        const ArrayGeometry geom = cfg.array();
        const double power_p = dbm_to_mw(power_dbm);
        const double sr2 = cfg.sigma_r2_mw();
        const double sb2 = cfg.sigma_b2_mw();

        TrialOutcome out;
        TrialRecord &rec = out.record;
        rec.trial = trial;
        rec.seed = seed;
        rec.power_dbm = power_dbm;
        rec.eps1 = eps1;

        const ChannelRealization ch =
            draw_scenario_channels(cfg.scenario, geom, cfg.channel_options(), derive_seed(seed, {tag_channel}));
        out.angles_clamped = ch.angles_clamped;
        out.los_truth = {ch.paths1.front().theta, ch.paths1.front().phi};
        out.h1_norm2 = ch.h1.squaredNorm();
        out.h2_norm2 = ch.h2.squaredNorm();

        const CMatrix omega = dft_pilot_schedule(geom.m(), cfg.k_instants);
        const HrisConfig hc = HrisConfig::from_eps1(eps1, omega, omega);
        const CVector y_r = simulate_y_r(ch.h1, hc, power_p, sr2, derive_seed(seed, {tag_noise_r}));
        const CMatrix y_b = simulate_y_b(ch.h1, ch.h2, hc, power_p, sb2, derive_seed(seed, {tag_noise_b}));
        const MeasurementSet meas = stack_measurements(y_r, y_b, power_p, sr2, sb2);

        const CrlbReport bounds = bounds_at_truth(ch, hc, power_p, sr2, sb2);
        rec.crlb_h1 = bounds.crlb_h1;
        rec.crlb_h2 = bounds.crlb_h2;

        try
        {
            const EstimationResult est = run_algorithm1(meas, hc, geom, cfg.estimator_options());
            rec.nmse_h1_init = nmse(ch.h1, est.h1_initial);
            rec.nmse_h1_refined = nmse(ch.h1, est.h1_refined);
            rec.nmse_h2 = nmse(ch.h2, est.h2);
            rec.iters_step1 = est.step1.iterations;
            rec.iters_step2 = est.step2.iterations;
            rec.iters_step3 = est.step3.iterations;
            rec.converged_all = est.converged_all();
            out.aoa_initial = est.aoa_initial;
            out.aoa_refined = est.aoa_refined;
            out.degenerate_sensing = est.degenerate_sensing;
            out.h2_ill_conditioned = est.h2_ill_conditioned;
            out.aoa_failed = est.aoa_failed;
            out.warnings = est.warnings;
            out.ms_step1 = est.step1.ms;
            out.ms_step2 = est.step2.ms;
            out.ms_step3 = est.step3.ms;
            out.ms_step4 = est.step4.ms;
        }
        catch (const ConfigError &)
        {
            throw;
        }
        catch (const Error &e)
        {
            out.solver_error = true;
            out.aoa_failed = true;
            out.warnings.push_back(std::string("estimation failed: ") + e.what());
            rec.nmse_h1_init = rec.nmse_h1_refined = rec.nmse_h2 = nan;
            rec.converged_all = false;
        }

        rec.theta_err_norefine_rad = out.aoa_initial ? out.aoa_initial->theta - out.los_truth.theta : nan;
        rec.phi_err_norefine_rad = out.aoa_initial ? out.aoa_initial->phi - out.los_truth.phi : nan;
        rec.theta_err_refined_rad = out.aoa_refined ? out.aoa_refined->theta - out.los_truth.theta : nan;
        rec.phi_err_refined_rad = out.aoa_refined ? out.aoa_refined->phi - out.los_truth.phi : nan;
        rec.ms_total = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        return out;
    }

    SweepResult run_sweep(const ExperimentConfig &cfg, unsigned workers, const ProgressFn &progress)
    {
        cfg.validate();
        struct Task
        {
            std::size_t pi, ei;
            int trial;
        };
        std::vector<Task> tasks;
        for (std::size_t pi = 0; pi < cfg.power_sweep_dbm.size(); ++pi)
            for (std::size_t ei = 0; ei < cfg.eps1_sweep.size(); ++ei)
                for (int t = 0; t < cfg.trials; ++t)
                    tasks.push_back({pi, ei, t});

        SweepResult result;
        result.outcomes.resize(tasks.size());
        if (workers == 0)
            workers = std::max(1u, std::thread::hardware_concurrency());
        workers = static_cast<unsigned>(std::min<std::size_t>(workers, tasks.size()));

        std::atomic<std::size_t> next{0};
        std::atomic<std::size_t> done{0};
        std::atomic<bool> abort{false};
        std::mutex lock;
        std::exception_ptr failure;

        auto work = [&]() {
            while (!abort)
            {
                const std::size_t i = next.fetch_add(1);
                if (i >= tasks.size())
                    return;
                const Task &task = tasks[i];
                try
                {
                    TrialOutcome o = run_trial(cfg, cfg.power_sweep_dbm[task.pi], cfg.eps1_sweep[task.ei], task.trial,
                                               trial_seed(cfg.master_seed, task.pi, task.ei, static_cast<std::size_t>(task.trial)));
                    o.power_index = task.pi;
                    o.eps_index = task.ei;
                    result.outcomes[i] = std::move(o);
                }
                catch (...)
                {
                    std::lock_guard<std::mutex> g(lock);
                    if (!failure)
                        failure = std::current_exception();
                    abort = true;
                    return;
                }
                const std::size_t n = done.fetch_add(1) + 1;
                if (progress)
                {
                    std::lock_guard<std::mutex> g(lock);
                    progress(n, tasks.size());
                }
            }
        };

        std::vector<std::thread> pool;
        for (unsigned w = 1; w < workers; ++w)
            pool.emplace_back(work);
        work();
        for (auto &th : pool)
            th.join();
        if (failure)
            std::rethrow_exception(failure);

        result.cells = aggregate(cfg, result.outcomes);
        return result;
    }

    std::vector<CellAggregate> aggregate(const ExperimentConfig &cfg, std::vector<TrialOutcome> outcomes)
    {
        std::sort(outcomes.begin(), outcomes.end(), [](const TrialOutcome &a, const TrialOutcome &b) {
            return std::tie(a.power_index, a.eps_index, a.record.trial) < std::tie(b.power_index, b.eps_index, b.record.trial);
        });

        std::vector<CellAggregate> cells;
        auto it = outcomes.begin();
        while (it != outcomes.end())
        {
            auto end = std::find_if(it, outcomes.end(), [&](const TrialOutcome &o) {
                return o.power_index != it->power_index || o.eps_index != it->eps_index;
            });

            CellAggregate cell;
            cell.power_dbm = it->record.power_dbm;
            cell.eps1 = it->record.eps1;
            std::vector<double> n1i, n1r, n2, ti, pi, tr, pr, c1, c2, c1n, c2n;
            int converged = 0;
            for (auto o = it; o != end; ++o)
            {
                const TrialRecord &r = o->record;
                ++cell.trials;
                if (std::isfinite(r.nmse_h1_init))
                    n1i.push_back(r.nmse_h1_init);
                if (std::isfinite(r.nmse_h1_refined))
                    n1r.push_back(r.nmse_h1_refined);
                if (std::isfinite(r.nmse_h2))
                    n2.push_back(r.nmse_h2);
                ti.push_back(r.theta_err_norefine_rad);
                pi.push_back(r.phi_err_norefine_rad);
                tr.push_back(r.theta_err_refined_rad);
                pr.push_back(r.phi_err_refined_rad);
                c1.push_back(r.crlb_h1);
                c2.push_back(r.crlb_h2);
                c1n.push_back(r.crlb_h1 / o->h1_norm2);
                c2n.push_back(r.crlb_h2 / o->h2_norm2);
                converged += r.converged_all ? 1 : 0;
                cell.aoa_failures += o->aoa_failed ? 1 : 0;
                cell.flagged_trials +=
                    (o->degenerate_sensing || o->h2_ill_conditioned || o->solver_error || o->angles_clamped) ? 1 : 0;
            }

            const std::uint64_t base = derive_seed(cfg.master_seed, {tag_bootstrap, it->power_index, it->eps_index});
            auto ci = [&](const std::vector<double> &v, std::uint64_t metric) {
                if (v.empty())
                    return ConfidenceInterval{nan, nan, nan};
                return bootstrap_mean_ci(v, derive_seed(base, {metric}));
            };
            cell.nmse_h1_init = ci(n1i, 1);
            cell.nmse_h1_refined = ci(n1r, 2);
            cell.nmse_h2 = ci(n2, 3);
            cell.rmse_theta_norefine_rad = finite_rms(ti);
            cell.rmse_phi_norefine_rad = finite_rms(pi);
            cell.rmse_theta_refined_rad = finite_rms(tr);
            cell.rmse_phi_refined_rad = finite_rms(pr);
            cell.crlb_h1 = mean_of(c1);
            cell.crlb_h2 = mean_of(c2);
            cell.crlb_h1_norm = mean_of(c1n);
            cell.crlb_h2_norm = mean_of(c2n);
            cell.converged_fraction = static_cast<double>(converged) / static_cast<double>(cell.trials);
            cells.push_back(cell);
            it = end;
        }
        return cells;
    }
}
