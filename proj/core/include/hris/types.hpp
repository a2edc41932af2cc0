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

#ifndef HRIS_TYPES_HPP
#define HRIS_TYPES_HPP

#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace hris
{
    using cdouble = std::complex<double>;
    using CVector = Eigen::VectorXcd;
    using CMatrix = Eigen::MatrixXcd;
    using RVector = Eigen::VectorXd;
    using Point3 = Eigen::Vector3d;

    inline constexpr double pi = std::numbers::pi;
    inline constexpr double two_pi = 2.0 * std::numbers::pi;
    inline constexpr double speed_of_light = 299792458.0; // [m/s]
    inline constexpr cdouble imag_unit{0.0, 1.0};

    // e^{j x}
    inline cdouble expj(double x) { return {std::cos(x), std::sin(x)}; }

    inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
    inline double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }
    inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

    // Carrier wavelength in meters for a frequency in GHz
    inline double wavelength_from_ghz(double fc_ghz) { return speed_of_light / (fc_ghz * 1e9); }
}

#endif
