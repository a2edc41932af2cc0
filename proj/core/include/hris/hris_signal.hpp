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

#ifndef HRIS_HRIS_SIGNAL_HPP
#define HRIS_HRIS_SIGNAL_HPP

#include <cstdint>

#include "hris/types.hpp"

namespace hris
{
    // Power split between reflection (eps1) and sensing (eps2) plus the per-instant reflection
    // and sensing-combiner phase schedules, each M x K. Construction enforces
    // eps1^2 + eps2^2 = 1 and unit-modulus schedule entries.
    class HrisConfig
    {
    public:
        static constexpr double power_split_tol = 1e-12;
        static constexpr double unit_modulus_tol = 1e-12;

        HrisConfig(double eps1, double eps2, CMatrix omega1, CMatrix omega2);

        // eps2 = sqrt(1 - eps1^2)
        static HrisConfig from_eps1(double eps1, CMatrix omega1, CMatrix omega2);

        double eps1() const { return eps1_; }
        double eps2() const { return eps2_; }
        const CMatrix &omega1() const { return omega1_; }
        const CMatrix &omega2() const { return omega2_; }
        Eigen::Index m() const { return omega1_.rows(); }
        Eigen::Index k() const { return omega1_.cols(); }

    private:
        double eps1_;
        double eps2_;
        CMatrix omega1_;
        CMatrix omega2_;
    };

    struct MeasurementSet
    {
        CVector y_r;     // K, sensing branch
        CMatrix y_b_mat; // N x K, at the BS
        CVector y_b;     // NK, column-major vec(y_b_mat)
        CVector y_rb;    // K + NK, [y_r; y_b]
        double power_p = 1.0;
        double sigma_r2 = 0.0;
        double sigma_b2 = 0.0;

        Eigen::Index k() const { return y_r.size(); }
        Eigen::Index n_bs() const { return y_b_mat.rows(); }
    };

    // First k columns of the m-point DFT matrix: entry (p, q) = exp(-j 2 pi p q / m)
    CMatrix dft_pilot_schedule(int m, int k);

    // Column-wise Kronecker product: column c of the result is a(:, c) (x) b(:, c)
    CMatrix khatri_rao(const CMatrix &a, const CMatrix &b);

    // Sensing output at one instant for a given noise sample
    cdouble sense_instant(const CVector &h1, const CVector &omega2_k, double eps2, double power_p, cdouble noise);

    // BS observation at one instant for a given noise vector
    CVector reflect_instant(const CVector &h1, const CMatrix &h2, const CVector &omega1_k, double eps1,
                            double power_p, const CVector &noise);

    // y_R = sqrt(P) eps2 Omega2^H h1 + n_R
    CVector simulate_y_r(const CVector &h1, const HrisConfig &config, double power_p, double sigma_r2,
                         std::uint64_t seed);

    // Y_B = sqrt(P) eps1 H2 diag(h1) Omega1 + N_B
    CMatrix simulate_y_b(const CVector &h1, const CMatrix &h2, const HrisConfig &config, double power_p,
                         double sigma_b2, std::uint64_t seed);

    // Vectorizes Y_B column by column and concatenates it under y_R
    MeasurementSet stack_measurements(const CVector &y_r, const CMatrix &y_b_mat, double power_p = 1.0,
                                      double sigma_r2 = 0.0, double sigma_b2 = 0.0);

    // [eps2 Omega2^H; eps1 (Omega1^T <> H2)], (K + NK) x M, so that y_rb = sqrt(P) A_RB h1 + n_RB
    CMatrix build_a_rb(const CMatrix &h2, const HrisConfig &config);
}

#endif
