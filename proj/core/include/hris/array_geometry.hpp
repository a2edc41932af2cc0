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

#ifndef HRIS_ARRAY_GEOMETRY_HPP
#define HRIS_ARRAY_GEOMETRY_HPP

#include "hris/types.hpp"

namespace hris
{
    // HRIS uniform planar array (parallel to the x-y plane) and BS uniform linear array (along z).
    // Element (ix, iy) of the planar array is stored at index ix * m_y + iy, i.e. the ordering of
    // steering_x(..) (x) steering_y(..).
    struct ArrayGeometry
    {
        int m_x = 1;             // HRIS elements along x
        int m_y = 1;             // HRIS elements along y
        int n_bs = 1;            // BS antennas
        double d1x = 0.5;        // HRIS spacing along x [m]
        double d1y = 0.5;        // HRIS spacing along y [m]
        double d2z = 0.5;        // BS spacing [m]
        double wavelength = 1.0; // [m]

        int m() const { return m_x * m_y; }

        // Throws InvalidArgument on nonpositive counts, spacings or wavelength
        void validate() const;

        static ArrayGeometry half_wavelength(int m_x, int m_y, int n_bs, double wavelength);
    };

    // Node positions in meters
    struct ScenarioGeometry
    {
        Point3 uav_pos{6.0, 9.0, 10.0};
        Point3 hris_pos{3.0, 4.0, 2.0};
        Point3 bs_pos{2.5, 3.5, 1.5};

        // Throws GeometryError when two nodes coincide
        void validate() const;
    };

    struct LosPath
    {
        double distance = 0.0; // [m]
        double theta = 0.0;    // azimuth [rad], in [0, pi]
        double phi = 0.0;      // elevation from the array normal [rad], in [-pi/2, pi/2]
    };

    struct Angles
    {
        double theta = 0.0;
        double phi = 0.0;
    };

    // Maps direction cosines u = cos(theta) sin(phi), v = sin(theta) sin(phi) onto the canonical
    // domain theta in [0, pi], phi in [-pi/2, pi/2]. Directions with v < 0 are represented with a
    // negative elevation. The mapping is exact for u^2 + v^2 <= 1; larger radii are clipped to 1.
    Angles angles_from_direction_cosines(double u, double v);

    // x-axis response: element m is exp(j 2 pi d1x / lambda * m * cos(theta) sin(phi))
    CVector steering_x(double theta, double phi, int m_x, double d1x, double wavelength);

    // y-axis response: element m is exp(j 2 pi d1y / lambda * m * sin(theta) sin(phi))
    CVector steering_y(double theta, double phi, int m_y, double d1y, double wavelength);

    // steering_x (x) steering_y, length M
    CVector steering_upa(double theta, double phi, const ArrayGeometry &geom);

    // BS response: element n is exp(j 2 pi d2z / lambda * n * cos(varphi))
    CVector steering_bs(double varphi, int n_bs, double d2z, double wavelength);

    // Unit-spacing line spectrum vector exp(j 2 pi f m), m = 0..n-1
    CVector line_spectrum_vector(double freq, int n);

    // Distance and angles of the straight path from a to b as seen by a planar array at a whose
    // normal is +z. Coincident points throw GeometryError. A path along the normal has theta = 0.
    LosPath los_path_from_positions(const Point3 &a, const Point3 &b);

    // Angle between (b - a) and the +z axis, in [0, pi]; the elevation seen by a z-aligned ULA at a.
    double z_axis_angle(const Point3 &a, const Point3 &b);
}

#endif
