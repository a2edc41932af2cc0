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

#include "hris/hris_signal.hpp"

#include <cmath>
#include <string>

#include "hris/errors.hpp"
#include "hris/rng.hpp"

namespace hris
{
    HrisConfig::HrisConfig(double eps1, double eps2, CMatrix omega1, CMatrix omega2)
        : eps1_(eps1), eps2_(eps2), omega1_(std::move(omega1)), omega2_(std::move(omega2))
    {
        if (!(eps1_ >= 0.0 && eps1_ <= 1.0 && eps2_ >= 0.0 && eps2_ <= 1.0))
            throw InvalidArgument("power splitting coefficients must lie in [0, 1]");
        if (std::abs(eps1_ * eps1_ + eps2_ * eps2_ - 1.0) > power_split_tol)
            throw InvalidArgument("power splitting coefficients must satisfy eps1^2 + eps2^2 = 1");
        if (omega1_.rows() != omega2_.rows() || omega1_.cols() != omega2_.cols())
            throw DimensionError("reflection and sensing schedules must have equal shape");
        if (omega1_.size() == 0)
            throw DimensionError("empty phase schedule");
        for (const CMatrix *om : {&omega1_, &omega2_})
            if ((om->array().abs() - 1.0).abs().maxCoeff() > unit_modulus_tol)
                throw InvalidArgument("phase schedule entries must have unit modulus");
    }

    HrisConfig HrisConfig::from_eps1(double eps1, CMatrix omega1, CMatrix omega2)
    {
        if (!(eps1 >= 0.0 && eps1 <= 1.0))
            throw InvalidArgument("eps1 must lie in [0, 1]");
        return HrisConfig(eps1, std::sqrt(1.0 - eps1 * eps1), std::move(omega1), std::move(omega2));
    }

    CMatrix dft_pilot_schedule(int m, int k)
    {
        if (m < 1 || k < 1 || k > m)
            throw InvalidArgument("DFT schedule needs 1 <= k <= m (got m=" + std::to_string(m) +
                                  ", k=" + std::to_string(k) + ")");
        CMatrix out(m, k);
        for (int q = 0; q < k; ++q)
            for (int p = 0; p < m; ++p)
                out(p, q) = expj(-two_pi * static_cast<double>((static_cast<long>(p) * q) % m) / m);
        return out;
    }

    CMatrix khatri_rao(const CMatrix &a, const CMatrix &b)
    {
        if (a.cols() != b.cols())
            throw DimensionError("khatri_rao needs equal column counts");
        CMatrix out(a.rows() * b.rows(), a.cols());
        for (Eigen::Index c = 0; c < a.cols(); ++c)
            for (Eigen::Index r = 0; r < a.rows(); ++r)
                out.col(c).segment(r * b.rows(), b.rows()) = a(r, c) * b.col(c);
        return out;
    }

    cdouble sense_instant(const CVector &h1, const CVector &omega2_k, double eps2, double power_p, cdouble noise)
    {
        return std::sqrt(power_p) * eps2 * omega2_k.dot(h1) + noise; // dot() conjugates the left operand
    }

    CVector reflect_instant(const CVector &h1, const CMatrix &h2, const CVector &omega1_k, double eps1,
                            double power_p, const CVector &noise)
    {
        return std::sqrt(power_p) * eps1 * (h2 * omega1_k.cwiseProduct(h1)) + noise;
    }

    CVector simulate_y_r(const CVector &h1, const HrisConfig &config, double power_p, double sigma_r2,
                         std::uint64_t seed)
    {
        if (h1.size() != config.m())
            throw DimensionError("h1 length does not match the HRIS schedule");
        Rng rng(seed);
        const CVector noise = complex_gaussian(config.k(), sigma_r2, rng);
        CVector y(config.k());
        for (Eigen::Index k = 0; k < config.k(); ++k)
            y(k) = sense_instant(h1, config.omega2().col(k), config.eps2(), power_p, noise(k));
        return y;
    }

    CMatrix simulate_y_b(const CVector &h1, const CMatrix &h2, const HrisConfig &config, double power_p,
                         double sigma_b2, std::uint64_t seed)
    {
        if (h1.size() != config.m() || h2.cols() != config.m())
            throw DimensionError("channel dimensions do not match the HRIS schedule");
        Rng rng(seed);
        const CVector noise = complex_gaussian(h2.rows() * config.k(), sigma_b2, rng);
        CMatrix y(h2.rows(), config.k());
        for (Eigen::Index k = 0; k < config.k(); ++k)
            y.col(k) = reflect_instant(h1, h2, config.omega1().col(k), config.eps1(), power_p,
                                       noise.segment(k * h2.rows(), h2.rows()));
        return y;
    }

    MeasurementSet stack_measurements(const CVector &y_r, const CMatrix &y_b_mat, double power_p, double sigma_r2,
                                      double sigma_b2)
    {
        if (y_r.size() != y_b_mat.cols())
            throw DimensionError("y_R and Y_B disagree on the number of instants");
        MeasurementSet out;
        out.y_r = y_r;
        out.y_b_mat = y_b_mat;
        out.y_b = y_b_mat.reshaped();
        out.y_rb.resize(y_r.size() + out.y_b.size());
        out.y_rb << y_r, out.y_b;
        out.power_p = power_p;
        out.sigma_r2 = sigma_r2;
        out.sigma_b2 = sigma_b2;
        return out;
    }

    CMatrix build_a_rb(const CMatrix &h2, const HrisConfig &config)
    {
        if (h2.cols() != config.m())
            throw DimensionError("H2 column count does not match the HRIS schedule");
        const Eigen::Index k = config.k();
        CMatrix out(k + h2.rows() * k, config.m());
        out.topRows(k) = config.eps2() * config.omega2().adjoint();
        out.bottomRows(h2.rows() * k) = config.eps1() * khatri_rao(config.omega1().transpose(), h2);
        return out;
    }
}
