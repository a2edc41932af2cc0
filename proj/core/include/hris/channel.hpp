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

#ifndef HRIS_CHANNEL_HPP
#define HRIS_CHANNEL_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "hris/array_geometry.hpp"
#include "hris/types.hpp"

namespace hris
{
    // One propagation path. For UAV-HRIS paths (theta, phi) is the AoA at the HRIS; for HRIS-BS
    // paths it is the AoD at the HRIS and varphi is the elevation AoA at the BS.
    struct PathParams
    {
        double distance = 1.0; // [m], sets the propagation phase
        double rho = 1.0;      // pathloss, linear power ratio
        double theta = 0.0;
        double phi = 0.0;
        double varphi = 0.0;
        bool is_los = false;

        // exp(-j 2 pi d / lambda) / sqrt(rho)
        cdouble gain(double wavelength) const;
    };

    struct ChannelRealization
    {
        std::vector<PathParams> paths1; // UAV -> HRIS, LoS first
        std::vector<PathParams> paths2; // HRIS -> BS, LoS first
        CVector h1;                     // M
        CMatrix h2;                     // N x M
        bool angles_clamped = false;    // an NLoS offset left the angle domain and was clamped
    };

    // 10^3.245 * d^2 * fc^2 with d in meters and fc in GHz
    double pathloss(double distance, double fc_ghz);

    // sum_i gain_i * steering_upa(theta_i, phi_i)
    CVector build_h1(std::span<const PathParams> paths, const ArrayGeometry &geom);

    // sum_i gain_i * steering_bs(varphi_i) * steering_upa(theta_i, phi_i)^H
    CMatrix build_h2(std::span<const PathParams> paths, const ArrayGeometry &geom);

    struct NlosOffsets
    {
        double azimuth = pi / 4.0;
        double elevation = pi / 4.0;
        double bs_elevation = pi / 4.0;
    };

    struct ChannelDrawOptions
    {
        double fc_ghz = 3.5;
        int l1 = 2;
        int l2 = 2;
        double nlos_power_gap_db = 10.0;
        NlosOffsets nlos_offsets{};
    };

    // LoS paths from the node positions, NLoS paths offset in angle from the LoS and weaker by the
    // configured power gap. NLoS propagation distances are uniform in [d_LoS, 2 d_LoS].
    ChannelRealization draw_scenario_channels(const ScenarioGeometry &scenario, const ArrayGeometry &geom,
                                              const ChannelDrawOptions &opts, std::uint64_t seed);
}

#endif
