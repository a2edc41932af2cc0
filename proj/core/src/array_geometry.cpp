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

#include "hris/array_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hris/errors.hpp"

namespace hris
{
    void ArrayGeometry::validate() const
    {
        if (m_x < 1 || m_y < 1 || n_bs < 1)
            throw InvalidArgument("array sizes must be >= 1 (got m_x=" + std::to_string(m_x) +
                                  ", m_y=" + std::to_string(m_y) + ", n_bs=" + std::to_string(n_bs) + ")");
        if (!(d1x > 0.0) || !(d1y > 0.0) || !(d2z > 0.0))
            throw InvalidArgument("element spacings must be positive");
        if (!(wavelength > 0.0))
            throw InvalidArgument("wavelength must be positive");
    }

    ArrayGeometry ArrayGeometry::half_wavelength(int m_x, int m_y, int n_bs, double wavelength)
    {
        ArrayGeometry g{m_x, m_y, n_bs, 0.5 * wavelength, 0.5 * wavelength, 0.5 * wavelength, wavelength};
        g.validate();
        return g;
    }

    void ScenarioGeometry::validate() const
    {
        if ((uav_pos - hris_pos).norm() == 0.0)
            throw GeometryError("UAV and HRIS positions coincide");
        if ((hris_pos - bs_pos).norm() == 0.0)
            throw GeometryError("HRIS and BS positions coincide");
        if ((uav_pos - bs_pos).norm() == 0.0)
            throw GeometryError("UAV and BS positions coincide");
    }

    Angles angles_from_direction_cosines(double u, double v)
    {
        const double r = std::min(1.0, std::hypot(u, v));
        const double elevation = std::asin(r);
        if (v < 0.0)
            return {std::atan2(-v, -u), -elevation};
        return {std::atan2(v, u), elevation};
    }

    namespace
    {
        CVector phase_ramp(double phase_step, int n)
        {
            CVector out(n);
            for (int m = 0; m < n; ++m)
                out(m) = expj(phase_step * m);
            return out;
        }
    }

    CVector steering_x(double theta, double phi, int m_x, double d1x, double wavelength)
    {
        return phase_ramp(two_pi * d1x / wavelength * std::cos(theta) * std::sin(phi), m_x);
    }

    CVector steering_y(double theta, double phi, int m_y, double d1y, double wavelength)
    {
        return phase_ramp(two_pi * d1y / wavelength * std::sin(theta) * std::sin(phi), m_y);
    }

    CVector steering_upa(double theta, double phi, const ArrayGeometry &geom)
    {
        const CVector ax = steering_x(theta, phi, geom.m_x, geom.d1x, geom.wavelength);
        const CVector ay = steering_y(theta, phi, geom.m_y, geom.d1y, geom.wavelength);
        CVector out(geom.m());
        for (int ix = 0; ix < geom.m_x; ++ix)
            for (int iy = 0; iy < geom.m_y; ++iy)
                out(ix * geom.m_y + iy) = ax(ix) * ay(iy);
        return out;
    }

    CVector steering_bs(double varphi, int n_bs, double d2z, double wavelength)
    {
        return phase_ramp(two_pi * d2z / wavelength * std::cos(varphi), n_bs);
    }

    CVector line_spectrum_vector(double freq, int n)
    {
        return phase_ramp(two_pi * freq, n);
    }

    LosPath los_path_from_positions(const Point3 &a, const Point3 &b)
    {
        const Point3 delta = b - a;
        const double distance = delta.norm();
        if (!(distance > 0.0))
            throw GeometryError("degenerate path: endpoints coincide");
        const Angles ang = angles_from_direction_cosines(delta.x() / distance, delta.y() / distance);
        return {distance, ang.theta, ang.phi};
    }

    double z_axis_angle(const Point3 &a, const Point3 &b)
    {
        const Point3 delta = b - a;
        const double distance = delta.norm();
        if (!(distance > 0.0))
            throw GeometryError("degenerate path: endpoints coincide");
        return std::acos(std::clamp(delta.z() / distance, -1.0, 1.0));
    }
}
