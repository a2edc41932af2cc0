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

#ifndef HRIS_AOA_HPP
#define HRIS_AOA_HPP

#include <vector>

#include "hris/array_geometry.hpp"
#include "hris/types.hpp"

namespace hris
{
    // A path found in a channel estimate: spatial frequencies along x and y (cycles per element)
    // and the least-squares amplitude of its steering vector.
    struct PathCandidate
    {
        double fx = 0.0;
        double fy = 0.0;
        cdouble amplitude{};
    };

    struct AoaEstimate
    {
        double theta = 0.0; // azimuth [rad], [0, pi]
        double phi = 0.0;   // elevation [rad], [-pi/2, pi/2]
        double fx = 0.0;
        double fy = 0.0;
        double pairing_residual = 0.0;     // || h - fitted paths || / || h ||
        bool low_confidence = false;       // pairing_residual above the configured threshold
        std::vector<PathCandidate> paths;  // all paired paths, strongest first; paths[0] is the LoS
    };

    struct AoaOptions
    {
        int subarray_x = 0; // 0 selects ceil((m_x + 1) / 2)
        int subarray_y = 0; // 0 selects ceil((m_y + 1) / 2)
        double residual_threshold = 0.5;
        bool polish = true; // Newton refinement of each root on the MUSIC null spectrum
    };

    // Average of v v^H over all contiguous s_x x s_y sub-grids of h laid out on the HRIS grid.
    // Throws InvalidArgument if the subarray does not fit or yields fewer than n_sources snapshots.
    CMatrix spatial_smooth(const CVector &h, const ArrayGeometry &geom, int s_x, int s_y, int n_sources = 1);

    // Root-MUSIC on a ULA covariance with steering exp(j 2 pi f m). Returns the n_sources distinct
    // frequencies (in [-1/2, 1/2)) whose roots lie closest to the unit circle.
    // Throws EstimationFailure when the decomposition or rooting does not yield enough roots.
    std::vector<double> root_music_1d(const CMatrix &cov, int n_sources, bool polish = true);

    // LoS direction from a channel estimate: per-axis smoothing and root-MUSIC, exhaustive pairing
    // of x and y frequencies by least-squares fit, the strongest fitted path taken as the LoS.
    AoaEstimate estimate_los_aoa(const CVector &h_hat, const ArrayGeometry &geom, int n_paths,
                                 const AoaOptions &opts = {});
}

#endif
