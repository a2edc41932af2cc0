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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "hris/config.hpp"
#include "hris/errors.hpp"
#include "hris/report.hpp"

using namespace hris;

namespace
{
    std::string read_file(const std::filesystem::path &p)
    {
        std::ifstream in(p);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    // First n lines of a text, newline-terminated
    std::string head_lines(const std::string &text, int n)
    {
        std::size_t pos = 0;
        for (int i = 0; i < n && pos != std::string::npos; ++i)
        {
            pos = text.find('\n', pos);
            if (pos != std::string::npos)
                ++pos;
        }
        return text.substr(0, pos);
    }

    TrialRecord sample_record(int i)
    {
        TrialRecord r;
        r.trial = i;
        r.seed = 0xFEDCBA9876543210ULL + i;
        r.power_dbm = -10.0;
        r.eps1 = 0.4;
        r.nmse_h1_init = 1.0 / 3.0 + i;
        r.nmse_h1_refined = 2.0e-4;
        r.nmse_h2 = 2.3456789012345678;
        r.theta_err_norefine_rad = -1.2345e-3;
        r.phi_err_norefine_rad = std::numeric_limits<double>::quiet_NaN();
        r.theta_err_refined_rad = 5e-310;
        r.phi_err_refined_rad = 0.1;
        r.crlb_h1 = 7.25e-9;
        r.crlb_h2 = std::numeric_limits<double>::infinity();
        r.iters_step1 = 14;
        r.iters_step2 = 512;
        r.iters_step3 = 77;
        r.converged_all = i % 2 == 0;
        r.ms_total = 381.5;
        return r;
    }
}

TEST(Config, DefaultsMatchReferenceSetting)
{
    const ExperimentConfig c;
    EXPECT_EQ(c.m_x * c.m_y, 36);
    EXPECT_EQ(c.n_bs, 4);
    EXPECT_EQ(c.k_instants, 32);
    EXPECT_EQ(c.trials, 500);
    EXPECT_EQ(c.l1, 2);
    EXPECT_EQ(c.l2, 2);
    EXPECT_EQ(c.scenario.uav_pos, Point3(6, 9, 10));
    EXPECT_EQ(c.scenario.hris_pos, Point3(3, 4, 2));
    EXPECT_EQ(c.scenario.bs_pos, Point3(2.5, 3.5, 1.5));
    EXPECT_NO_THROW(c.validate());
}

TEST(Config, ShippedFileLoads)
{
    const ExperimentConfig c = load_config(std::filesystem::path(HRIS_SOURCE_DIR) / "configs" / "paper.json");
    const ExperimentConfig d;
    EXPECT_EQ(c.trials, d.trials);
    EXPECT_EQ(c.power_sweep_dbm, d.power_sweep_dbm);
    EXPECT_EQ(c.eps1_sweep, d.eps1_sweep);
    EXPECT_EQ(c.k_instants, d.k_instants);
    EXPECT_DOUBLE_EQ(c.nlos_offsets.elevation, pi / 4);
}

TEST(Config, UnknownKeysRejected)
{
    EXPECT_THROW(parse_config(R"({"trails": 5})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"solver": {"tol": 1}})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"geometry": {"m_z": 2}})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"nlos_angle_offset": {"roll": 1}})"), ConfigError);
}

TEST(Config, InvalidValuesRejected)
{
    EXPECT_THROW(parse_config(R"({"eps1_sweep": [0.5, 1.2]})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"k_instants": 37})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"trials": 0})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"trials": "many"})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"geometry": {"bs_pos": [3, 4, 2]}})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"geometry": {"uav_pos": [1, 2]}})"), ConfigError);
    EXPECT_THROW(parse_config("{not json"), ConfigError);
    EXPECT_THROW(load_config("/nonexistent/hris.json"), ConfigError);
}

TEST(Config, PerAxisOffsetsAndOverrides)
{
    const ExperimentConfig c = parse_config(R"({
        "nlos_angle_offset": {"azimuth": 0.5, "elevation": 0.0},
        "sigma_r2_dbm": -95, "aoa": {"n_paths": 1}, "geometry": {"d1x": 0.03}})");
    EXPECT_DOUBLE_EQ(c.nlos_offsets.azimuth, 0.5);
    EXPECT_DOUBLE_EQ(c.nlos_offsets.elevation, 0.0);
    EXPECT_DOUBLE_EQ(c.nlos_offsets.bs_elevation, pi / 4);
    EXPECT_NEAR(c.sigma_r2_mw(), std::pow(10.0, -9.5), 1e-20);
    EXPECT_NEAR(c.sigma_b2_mw(), 1e-9, 1e-20);
    EXPECT_EQ(c.estimator_options().n_paths, 1);
    EXPECT_DOUBLE_EQ(c.array().d1x, 0.03);
    EXPECT_NEAR(c.array().d1y, wavelength_from_ghz(3.5) / 2.0, 1e-15);
}

TEST(Config, Profiles)
{
    ExperimentConfig c;
    apply_profile(c, "desk");
    EXPECT_EQ(c.trials, 50);
    EXPECT_EQ(c.power_sweep_dbm, (std::vector<double>{-20.0, -10.0, 0.0}));
    ExperimentConfig d;
    apply_profile(d, "paper");
    EXPECT_EQ(d.trials, 500);
    EXPECT_THROW(apply_profile(d, "laptop"), ConfigError);
}

TEST(Config, JsonRoundTrip)
{
    ExperimentConfig c;
    c.trials = 7;
    c.sigma_b2_dbm = -80.0;
    c.solver.relaxation = 1.3;
    c.aoa.subarray_x = 3;
    c.master_seed = 0xFFFFFFFFFFFFFFFFULL;
    const std::string j = config_to_json(c);
    const ExperimentConfig back = parse_config(j);
    EXPECT_EQ(config_to_json(back), j);
    EXPECT_EQ(back.master_seed, c.master_seed);
    EXPECT_FALSE(version().empty());
}

TEST(Report, TrialColumnsExactOrder)
{
    const std::vector<std::string> expected{
        "trial", "seed", "power_dbm", "eps1", "nmse_h1_init", "nmse_h1_refined", "nmse_h2",
        "theta_err_norefine_rad", "phi_err_norefine_rad", "theta_err_refined_rad", "phi_err_refined_rad",
        "crlb_h1", "crlb_h2", "iters_step1", "iters_step2", "iters_step3", "converged_all", "ms_total"};
    EXPECT_EQ(trial_columns(), expected);
}

TEST(Report, GoldenSchemaHeaders)
{
    const std::filesystem::path data(HRIS_TEST_DATA_DIR);
    EXPECT_EQ(head_lines(trials_csv({}), 2), read_file(data / "trials_header.golden"));
    EXPECT_EQ(head_lines(aggregate_csv({}), 2), read_file(data / "aggregate_header.golden"));
}

TEST(Report, TrialCsvRoundTrip)
{
    std::vector<TrialRecord> recs{sample_record(0), sample_record(1), sample_record(2)};
    const std::string text = trials_csv(recs);
    const std::vector<TrialRecord> back = parse_trials_csv(text);
    ASSERT_EQ(back.size(), recs.size());
    for (std::size_t i = 0; i < recs.size(); ++i)
    {
        EXPECT_EQ(back[i].trial, recs[i].trial);
        EXPECT_EQ(back[i].seed, recs[i].seed);
        EXPECT_EQ(back[i].nmse_h1_init, recs[i].nmse_h1_init);
        EXPECT_EQ(back[i].nmse_h2, recs[i].nmse_h2);
        EXPECT_TRUE(std::isnan(back[i].phi_err_norefine_rad));
        EXPECT_EQ(back[i].theta_err_refined_rad, recs[i].theta_err_refined_rad);
        EXPECT_TRUE(std::isinf(back[i].crlb_h2));
        EXPECT_EQ(back[i].crlb_h1, recs[i].crlb_h1);
        EXPECT_EQ(back[i].iters_step2, recs[i].iters_step2);
        EXPECT_EQ(back[i].converged_all, recs[i].converged_all);
        EXPECT_EQ(back[i].ms_total, recs[i].ms_total);
    }
    EXPECT_EQ(trials_csv(back), text);
}

TEST(Report, MalformedCsvRejected)
{
    EXPECT_THROW(parse_trials_csv("trial,seed\n"), IoError);
    std::string text = trials_csv({});
    EXPECT_THROW(parse_trials_csv(text + "1,2,3\n"), IoError);
}

TEST(Report, UnwritableDirectory)
{
    EXPECT_THROW(ensure_writable_dir("/proc/hris-cannot-exist"), IoError);
    const std::filesystem::path tmp = std::filesystem::temp_directory_path() / "hris_report_test";
    EXPECT_NO_THROW(ensure_writable_dir(tmp));
    write_text(tmp / "x.txt", "abc");
    EXPECT_EQ(read_file(tmp / "x.txt"), "abc");
    std::filesystem::remove_all(tmp);
}
