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

#ifndef HRIS_HARNESS_HPP
#define HRIS_HARNESS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hris/aoa.hpp"
#include "hris/config.hpp"
#include "hris/crlb_metrics.hpp"

namespace hris
{
    // One row of the per-trial table. Angle errors are signed (estimate - truth) and NaN when the
    // AoA stage failed; crlb_* are +inf when the bound does not exist.
    struct TrialRecord
    {
        int trial = 0;
        std::uint64_t seed = 0;
        double power_dbm = 0.0;
        double eps1 = 0.0;
        double nmse_h1_init = 0.0;
        double nmse_h1_refined = 0.0;
        double nmse_h2 = 0.0;
        double theta_err_norefine_rad = 0.0;
        double phi_err_norefine_rad = 0.0;
        double theta_err_refined_rad = 0.0;
        double phi_err_refined_rad = 0.0;
        double crlb_h1 = 0.0;
        double crlb_h2 = 0.0;
        int iters_step1 = 0;
        int iters_step2 = 0;
        int iters_step3 = 0;
        bool converged_all = false;
        double ms_total = 0.0;
    };

    // A trial record plus the context needed for aggregation and diagnostics
    struct TrialOutcome
    {
        TrialRecord record;
        std::size_t power_index = 0;
        std::size_t eps_index = 0;
        Angles los_truth;
        std::optional<AoaEstimate> aoa_initial;
        std::optional<AoaEstimate> aoa_refined;
        double h1_norm2 = 0.0;
        double h2_norm2 = 0.0;
        double ms_step1 = 0.0, ms_step2 = 0.0, ms_step3 = 0.0, ms_step4 = 0.0;
        bool degenerate_sensing = false;
        bool h2_ill_conditioned = false;
        bool aoa_failed = false;
        bool angles_clamped = false;
        bool solver_error = false;
        std::vector<std::string> warnings;
    };

    struct CellAggregate
    {
        double power_dbm = 0.0;
        double eps1 = 0.0;
        int trials = 0;
        ConfidenceInterval nmse_h1_init;
        ConfidenceInterval nmse_h1_refined;
        ConfidenceInterval nmse_h2;
        double rmse_theta_norefine_rad = 0.0; // over trials with an AoA estimate
        double rmse_phi_norefine_rad = 0.0;
        double rmse_theta_refined_rad = 0.0;
        double rmse_phi_refined_rad = 0.0;
        double crlb_h1 = 0.0;      // mean raw bound
        double crlb_h2 = 0.0;
        double crlb_h1_norm = 0.0; // mean of bound / ||h1||^2
        double crlb_h2_norm = 0.0; // mean of bound / ||H2||_F^2
        double converged_fraction = 0.0;
        int aoa_failures = 0;
        int flagged_trials = 0; // degenerate sensing, ill-conditioned step 2, solver error or clamped angles
    };

    struct SweepResult
    {
        std::vector<TrialOutcome> outcomes; // ordered by (power index, eps1 index, trial)
        std::vector<CellAggregate> cells;   // ordered by (power index, eps1 index)
    };

    std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t power_index, std::size_t eps_index, std::size_t trial);

    // Draws channels, simulates both branches, runs the estimator and scores it. Deterministic in
    // (cfg, power_dbm, eps1, seed); estimation errors are recorded in the outcome, not thrown.
    TrialOutcome run_trial(const ExperimentConfig &cfg, double power_dbm, double eps1, int trial, std::uint64_t seed);

    using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

    // All (power, eps1, trial) combinations on a pool of workers (0 picks the hardware concurrency)
    SweepResult run_sweep(const ExperimentConfig &cfg, unsigned workers = 0, const ProgressFn &progress = {});

    // Per-cell statistics; the input order does not matter
    std::vector<CellAggregate> aggregate(const ExperimentConfig &cfg, std::vector<TrialOutcome> outcomes);
}

#endif
