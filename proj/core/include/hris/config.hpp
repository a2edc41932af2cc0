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

#ifndef HRIS_CONFIG_HPP
#define HRIS_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hris/array_geometry.hpp"
#include "hris/channel.hpp"
#include "hris/estimator.hpp"

namespace hris
{
    // Everything that determines a Monte-Carlo sweep. Defaults reproduce the reference setting:
    // 6 x 6 HRIS, 4 BS antennas, 32 instants, two paths per hop, 500 trials.
    struct ExperimentConfig
    {
        ScenarioGeometry scenario;
        int m_x = 6;
        int m_y = 6;
        int n_bs = 4;
        std::optional<double> d1x, d1y, d2z; // element spacings [m]; half a wavelength when unset

        double fc_ghz = 3.5;
        int l1 = 2;
        int l2 = 2;
        double nlos_power_gap_db = 10.0;
        NlosOffsets nlos_offsets{};

        int k_instants = 32;
        int trials = 500;
        std::vector<double> power_sweep_dbm{-30.0, -25.0, -20.0, -15.0, -10.0, -5.0, 0.0};
        std::vector<double> eps1_sweep{0.2, 0.4, 0.6, 0.8};
        double sigma2_dbm = -90.0;
        std::optional<double> sigma_r2_dbm, sigma_b2_dbm; // per-branch overrides

        SolverOptions solver;
        AoaOptions aoa;
        int aoa_paths = 0; // model order for the AoA stage; 0 uses l1
        int refinement_rounds = 1;
        std::uint64_t master_seed = 1;

        // Throws ConfigError naming the first violated invariant
        void validate() const;

        ArrayGeometry array() const;
        ChannelDrawOptions channel_options() const;
        EstimatorOptions estimator_options() const;
        double sigma_r2_mw() const;
        double sigma_b2_mw() const;
    };

    inline constexpr int manifest_schema_version = 1;

    // Parses a config document, or the config embedded in a run manifest. Unknown keys are rejected.
    ExperimentConfig parse_config(std::string_view json_text);
    ExperimentConfig load_config(const std::filesystem::path &path);

    // "desk": 50 trials over three powers; "paper": no change
    void apply_profile(ExperimentConfig &cfg, std::string_view profile);

    std::string config_to_json(const ExperimentConfig &cfg, int indent = 2);

    // Library version string
    std::string version();
}

#endif
