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

#ifndef HRIS_REPORT_HPP
#define HRIS_REPORT_HPP

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hris/config.hpp"
#include "hris/harness.hpp"

namespace hris
{
    inline constexpr int csv_schema_version = 1;

    // Column names of the per-trial table, in file order
    const std::vector<std::string> &trial_columns();
    // Column names of the per-cell table, in file order
    const std::vector<std::string> &aggregate_columns();

    // Per-trial table: a "# schema" comment line, a header line, one row per record (%.17g)
    std::string trials_csv(std::span<const TrialRecord> records);
    std::vector<TrialRecord> parse_trials_csv(std::string_view text);

    std::string aggregate_csv(std::span<const CellAggregate> cells);

    // Resolved config, seeds, versions. Accepted by parse_config for replay.
    std::string manifest_json(const ExperimentConfig &cfg, const SweepResult &result);

    // Trials and cells as one JSON document
    std::string results_json(const SweepResult &result);

    // NMSE and normalized bounds versus transmit power, one series per eps1
    std::string svg_nmse_plot(std::span<const CellAggregate> cells);

    // LoS AoA estimates of one (power, eps1) cell, with and without refinement
    std::string svg_aoa_scatter(std::span<const TrialOutcome> outcomes, std::size_t power_index, std::size_t eps_index);

    // Creates the directory and checks that a file can be written into it; throws IoError
    void ensure_writable_dir(const std::filesystem::path &dir);
    void write_text(const std::filesystem::path &path, std::string_view content);

    enum class OutputFormat
    {
        csv,
        json
    };

    // Writes the result files into dir and returns their paths
    std::vector<std::filesystem::path> emit_results(const ExperimentConfig &cfg, const SweepResult &result,
                                                    const std::filesystem::path &dir, OutputFormat format, bool plots);
}

#endif
