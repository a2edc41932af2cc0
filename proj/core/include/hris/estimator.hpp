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

#ifndef HRIS_ESTIMATOR_HPP
#define HRIS_ESTIMATOR_HPP

#include <optional>
#include <string>
#include <vector>

#include "hris/anm.hpp"
#include "hris/aoa.hpp"
#include "hris/array_geometry.hpp"
#include "hris/hris_signal.hpp"

namespace hris
{
    struct EstimatorOptions
    {
        SolverOptions solver;
        int refinement_rounds = 1; // 0: steps 1-2 only
        int n_paths = 2;           // model order handed to the AoA stage
        AoaOptions aoa;
    };

    // Wall time and solver bookkeeping of one stage
    struct StageStats
    {
        int iterations = 0;
        bool converged = true;
        double ms = 0.0;
    };

    struct EstimationResult
    {
        CVector h1_initial;  // step 1, sensing branch only
        CMatrix h2;          // last step-2 estimate
        CVector h1_refined;  // last step-3 estimate (equals h1_initial when no refinement ran)
        std::optional<AoaEstimate> aoa_initial;
        std::optional<AoaEstimate> aoa_refined;

        StageStats step1, step2, step3, step4; // steps 2 and 3 accumulate over refinement rounds
        double mu1 = 0.0, mu2 = 0.0, mu3 = 0.0;

        bool degenerate_sensing = false;    // eps2 = 0: the sensing branch carries no signal
        bool h2_ill_conditioned = false;    // reflected operator vanished, H2 set to zero
        bool aoa_failed = false;            // root-MUSIC or pairing could not produce an estimate
        std::vector<std::string> warnings;

        bool converged_all() const { return step1.converged && step2.converged && step3.converged; }
    };

    // Joint estimation: h1 from the sensing branch, H2 from the BS signal given h1, refinement of h1
    // from both branches given H2 (repeated refinement_rounds times), then LoS AoA extraction.
    EstimationResult run_algorithm1(const MeasurementSet &meas, const HrisConfig &config, const ArrayGeometry &geom,
                                    const EstimatorOptions &opts = {});
}

#endif
