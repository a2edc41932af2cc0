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

#include "hris/channel.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "hris/errors.hpp"
#include "hris/rng.hpp"

namespace hris
{
    namespace
    {
        void check_path(const PathParams &p)
        {
            if (!(p.distance > 0.0))
                throw InvalidArgument("path distance must be positive");
            if (!(p.rho > 0.0))
                throw InvalidArgument("path pathloss must be positive");
        }

        // Adds an offset and clamps into [lo, hi]; reports whether clamping happened.
        double offset_angle(double base, double offset, double lo, double hi, bool &clamped)
        {
            const double raw = base + offset;
            const double out = std::clamp(raw, lo, hi);
            if (out != raw)
                clamped = true;
            return out;
        }
    }

    cdouble PathParams::gain(double wavelength) const
    {
        return expj(-two_pi * distance / wavelength) / std::sqrt(rho);
    }

    double pathloss(double distance, double fc_ghz)
    {
        if (!(distance > 0.0) || !(fc_ghz > 0.0))
            throw InvalidArgument("pathloss needs positive distance and carrier frequency");
        return std::pow(10.0, 3.245) * distance * distance * fc_ghz * fc_ghz;
    }

    CVector build_h1(std::span<const PathParams> paths, const ArrayGeometry &geom)
    {
        if (paths.empty())
            throw InvalidArgument("build_h1 needs at least one path");
        geom.validate();
        CVector h = CVector::Zero(geom.m());
        for (const auto &p : paths)
        {
            check_path(p);
            h += p.gain(geom.wavelength) * steering_upa(p.theta, p.phi, geom);
        }
        return h;
    }

    CMatrix build_h2(std::span<const PathParams> paths, const ArrayGeometry &geom)
    {
        if (paths.empty())
            throw InvalidArgument("build_h2 needs at least one path");
        geom.validate();
        CMatrix h = CMatrix::Zero(geom.n_bs, geom.m());
        for (const auto &p : paths)
        {
            check_path(p);
            const CVector az = steering_bs(p.varphi, geom.n_bs, geom.d2z, geom.wavelength);
            const CVector a = steering_upa(p.theta, p.phi, geom);
            h += p.gain(geom.wavelength) * az * a.adjoint();
        }
        return h;
    }

    ChannelRealization draw_scenario_channels(const ScenarioGeometry &scenario, const ArrayGeometry &geom,
                                              const ChannelDrawOptions &opts, std::uint64_t seed)
    {
        if (opts.l1 < 1 || opts.l2 < 1)
            throw InvalidArgument("path counts l1, l2 must be >= 1");
        scenario.validate();
        geom.validate();

        Rng rng(derive_seed(seed, {0xC4A1}));
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const double gap = db_to_linear(opts.nlos_power_gap_db);

        ChannelRealization out;

        // UAV -> HRIS, seen from the HRIS
        const LosPath los1 = los_path_from_positions(scenario.hris_pos, scenario.uav_pos);
        PathParams p1{los1.distance, pathloss(los1.distance, opts.fc_ghz), los1.theta, los1.phi, 0.0, true};
        out.paths1.push_back(p1);
        for (int i = 1; i < opts.l1; ++i)
        {
            PathParams p = p1;
            p.is_los = false;
            p.rho = p1.rho * gap;
            p.distance = p1.distance * (1.0 + unit(rng));
            p.theta = offset_angle(p1.theta, i * opts.nlos_offsets.azimuth, 0.0, pi, out.angles_clamped);
            p.phi = offset_angle(p1.phi, i * opts.nlos_offsets.elevation, -pi / 2.0, pi / 2.0, out.angles_clamped);
            out.paths1.push_back(p);
        }

        // HRIS -> BS: AoD at the HRIS, elevation AoA at the BS
        const LosPath los2 = los_path_from_positions(scenario.hris_pos, scenario.bs_pos);
        const double varphi2 = z_axis_angle(scenario.bs_pos, scenario.hris_pos);
        PathParams p2{los2.distance, pathloss(los2.distance, opts.fc_ghz), los2.theta, los2.phi, varphi2, true};
        out.paths2.push_back(p2);
        for (int i = 1; i < opts.l2; ++i)
        {
            PathParams p = p2;
            p.is_los = false;
            p.rho = p2.rho * gap;
            p.distance = p2.distance * (1.0 + unit(rng));
            p.theta = offset_angle(p2.theta, i * opts.nlos_offsets.azimuth, 0.0, pi, out.angles_clamped);
            p.phi = offset_angle(p2.phi, i * opts.nlos_offsets.elevation, -pi / 2.0, pi / 2.0, out.angles_clamped);
            p.varphi = offset_angle(p2.varphi, i * opts.nlos_offsets.bs_elevation, 0.0, pi, out.angles_clamped);
            out.paths2.push_back(p);
        }

        out.h1 = build_h1(out.paths1, geom);
        out.h2 = build_h2(out.paths2, geom);
        return out;
    }
}
