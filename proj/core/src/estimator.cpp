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

#include "hris/estimator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "hris/errors.hpp"

namespace hris
{
    namespace
    {
        using clock = std::chrono::steady_clock;

        double elapsed_ms(clock::time_point since)
        {
            return std::chrono::duration<double, std::milli>(clock::now() - since).count();
        }

        void accumulate(StageStats &stats, const AnmSolution &sol, clock::time_point since)
        {
            stats.iterations += sol.iterations;
            stats.converged = stats.converged && sol.converged;
            stats.ms += elapsed_ms(since);
        }

        std::optional<AoaEstimate> try_aoa(const CVector &h, const ArrayGeometry &geom, const EstimatorOptions &opts,
                                           EstimationResult &res, const char *label)
        {
            try
            {
                return estimate_los_aoa(h, geom, opts.n_paths, opts.aoa);
            }
            catch (const EstimationFailure &e)
            {
                res.aoa_failed = true;
                res.warnings.push_back(std::string(label) + ": " + e.what());
                return std::nullopt;
            }
        }
    }

    EstimationResult run_algorithm1(const MeasurementSet &meas, const HrisConfig &config, const ArrayGeometry &geom,
                                    const EstimatorOptions &opts)
    {
        geom.validate();
        if (opts.refinement_rounds < 0)
            throw InvalidArgument("run_algorithm1: refinement_rounds must be >= 0");
        if (config.m() != geom.m())
            throw DimensionError("run_algorithm1: schedule rows must equal M");
        if (meas.k() != config.k() || meas.y_b_mat.cols() != config.k())
            throw DimensionError("run_algorithm1: measurement length must equal K");
        if (meas.n_bs() != geom.n_bs)
            throw DimensionError("run_algorithm1: BS signal rows must equal N");

        const int m = geom.m();
        const double sqrt_p = std::sqrt(meas.power_p);
        const double sigma_r = std::sqrt(meas.sigma_r2);
        const double sigma_b = std::sqrt(meas.sigma_b2);
        const double c = opts.solver.reg_scale;

        EstimationResult res;
        res.degenerate_sensing = config.eps2() == 0.0;
        if (res.degenerate_sensing)
            res.warnings.push_back("eps2 = 0: sensing branch carries no signal");

        // Step 1: sensing branch
        auto t0 = clock::now();
        const CMatrix sensing1 = sqrt_p * config.eps2() * config.omega2().adjoint();
        res.mu1 = anm_regularizer(sigma_r, rms_column_norm(sensing1), m, c);
        const AnmSolution s1 = solve_anm_h1(meas.y_r, sensing1, res.mu1, geom, opts.solver);
        accumulate(res.step1, s1, t0);
        res.h1_initial = s1.vector();
        res.h1_refined = res.h1_initial;

        // Whitening of the stacked signal when the two branches see different noise levels
        const bool whiten = sigma_r != sigma_b && sigma_r > 0.0 && sigma_b > 0.0;
        const double w_r = whiten ? 1.0 / sigma_r : 1.0;
        const double w_b = whiten ? 1.0 / sigma_b : 1.0;
        const double sigma3 = whiten ? 1.0 : std::max(sigma_r, sigma_b);
        CVector y3 = meas.y_rb;
        y3.head(meas.k()) *= w_r;
        y3.tail(meas.y_b.size()) *= w_b;

        auto step2 = [&](const CVector &h1_hat) {
            const auto t = clock::now();
            const CMatrix reflected = sqrt_p * config.eps1() * h1_hat.asDiagonal() * config.omega1();
            const double gain = reflected.norm() / std::sqrt(static_cast<double>(m));
            res.mu2 = anm_regularizer(sigma_b, gain, m * geom.n_bs, c);
            try
            {
                const AnmSolution s2 = solve_anm_h2(meas.y_b_mat, h1_hat, config.omega1(), config.eps1(),
                                                    meas.power_p, res.mu2, geom, opts.solver);
                accumulate(res.step2, s2, t);
                res.h2 = s2.estimate;
            }
            catch (const IllConditioned &e)
            {
                res.h2_ill_conditioned = true;
                res.warnings.push_back(std::string("step 2: ") + e.what());
                res.h2 = CMatrix::Zero(geom.n_bs, m);
                res.step2.ms += elapsed_ms(t);
            }
        };

        auto step3 = [&]() {
            const auto t = clock::now();
            CMatrix sensing3 = sqrt_p * build_a_rb(res.h2, config);
            sensing3.topRows(meas.k()) *= w_r;
            sensing3.bottomRows(meas.y_b.size()) *= w_b;
            res.mu3 = anm_regularizer(sigma3, rms_column_norm(sensing3), m, c);
            const AnmSolution s3 = solve_anm_h1(y3, sensing3, res.mu3, geom, opts.solver);
            accumulate(res.step3, s3, t);
            res.h1_refined = s3.vector();
        };

        // Steps 2 and 3, looped
        step2(res.h1_initial);
        for (int round = 0; round < opts.refinement_rounds; ++round)
        {
            step3();
            if (round + 1 < opts.refinement_rounds)
                step2(res.h1_refined);
        }

        // Step 4: LoS direction, from the initial estimate (benchmark) and the refined one
        t0 = clock::now();
        res.aoa_initial = try_aoa(res.h1_initial, geom, opts, res, "AoA from initial estimate");
        res.aoa_refined = opts.refinement_rounds > 0 ? try_aoa(res.h1_refined, geom, opts, res, "AoA from refined estimate")
                                                     : res.aoa_initial;
        res.step4.ms = elapsed_ms(t0);
        return res;
    }
}
