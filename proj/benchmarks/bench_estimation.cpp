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

#include <benchmark/benchmark.h>

#include "hris/anm.hpp"
#include "hris/aoa.hpp"
#include "hris/channel.hpp"
#include "hris/estimator.hpp"
#include "hris/harness.hpp"
#include "hris/hris_signal.hpp"
#include "hris/rng.hpp"

using namespace hris;

namespace
{
    struct Fixture
    {
        ArrayGeometry geom = ArrayGeometry::half_wavelength(6, 6, 4, wavelength_from_ghz(3.5));
        ChannelRealization ch = draw_scenario_channels(ScenarioGeometry{}, geom, ChannelDrawOptions{}, 1);
        CMatrix omega = dft_pilot_schedule(36, 32);
        HrisConfig config = HrisConfig::from_eps1(0.4, omega, omega);
        double p = dbm_to_mw(-10.0);
        double s2 = dbm_to_mw(-90.0);
        MeasurementSet meas = stack_measurements(simulate_y_r(ch.h1, config, p, s2, 2),
                                                 simulate_y_b(ch.h1, ch.h2, config, p, s2, 3), p, s2, s2);
    };

    const Fixture &fixture()
    {
        static const Fixture f;
        return f;
    }
}

static void BM_Step1SensingBranch(benchmark::State &state)
{
    const Fixture &f = fixture();
    const CMatrix sensing = std::sqrt(f.p) * f.config.eps2() * f.omega.adjoint();
    const double mu = anm_regularizer(std::sqrt(f.s2), rms_column_norm(sensing), 36);
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_anm_h1(f.meas.y_r, sensing, mu, f.geom));
}
BENCHMARK(BM_Step1SensingBranch)->Unit(benchmark::kMillisecond);

static void BM_Step2ReflectedChannel(benchmark::State &state)
{
    const Fixture &f = fixture();
    const CMatrix c = std::sqrt(f.p) * f.config.eps1() * f.ch.h1.asDiagonal() * f.omega;
    const double mu = anm_regularizer(std::sqrt(f.s2), c.norm() / 6.0, 144);
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_anm_h2(f.meas.y_b_mat, f.ch.h1, f.omega, f.config.eps1(), f.p, mu, f.geom));
}
BENCHMARK(BM_Step2ReflectedChannel)->Unit(benchmark::kMillisecond);

static void BM_Step3Refinement(benchmark::State &state)
{
    const Fixture &f = fixture();
    const CMatrix sensing = std::sqrt(f.p) * build_a_rb(f.ch.h2, f.config);
    const double mu = anm_regularizer(std::sqrt(f.s2), rms_column_norm(sensing), 36);
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_anm_h1(f.meas.y_rb, sensing, mu, f.geom));
}
BENCHMARK(BM_Step3Refinement)->Unit(benchmark::kMillisecond);

static void BM_LosAoa(benchmark::State &state)
{
    const Fixture &f = fixture();
    for (auto _ : state)
        benchmark::DoNotOptimize(estimate_los_aoa(f.ch.h1, f.geom, 2));
}
BENCHMARK(BM_LosAoa)->Unit(benchmark::kMicrosecond);

static void BM_FullTrial(benchmark::State &state)
{
    ExperimentConfig cfg;
    std::uint64_t trial = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(run_trial(cfg, -10.0, 0.4, 0, trial_seed(1, 0, 0, trial++)));
}
BENCHMARK(BM_FullTrial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
