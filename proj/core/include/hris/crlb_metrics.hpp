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

#ifndef HRIS_CRLB_METRICS_HPP
#define HRIS_CRLB_METRICS_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "hris/aoa.hpp"
#include "hris/array_geometry.hpp"
#include "hris/hris_signal.hpp"
#include "hris/types.hpp"

namespace hris
{
    // Gram matrices whose smallest eigenvalue falls below this fraction of the largest are treated as singular
    inline constexpr double crlb_rank_tol = 1e-10;

    // Tr{[(2P / sigma2) A^H A]^-1} for y = sqrt(P) A h + n. Throws UnboundedCrlb on a rank-deficient Gram.
    double crlb_h1(const CMatrix &a_rb, double power_p, double sigma2);

    // Tr{[(2P / sigma2) eps1^2 W^H W]^-1} with W = (Omega1^T diag(h1)) kron I_N, the bound for vec(H2)
    // given h1. Throws UnboundedCrlb when K < M, h1 has zero entries or eps1 = 0.
    double crlb_h2(const CMatrix &omega1, const CVector &h1, int n_bs, double eps1, double power_p, double sigma2);

    // Smallest eigenvalue of the Gram matrices above, without the 2P / sigma2 factor
    double crlb_h1_min_eig(const CMatrix &a_rb);
    double crlb_h2_min_eig(const CMatrix &omega1, const CVector &h1, int n_bs, double eps1);

    struct CrlbReport
    {
        double crlb_h1 = 0.0; // +inf when unbounded
        double crlb_h2 = 0.0; // +inf when unbounded
        double min_eig_h1 = 0.0;
        double min_eig_h2 = 0.0;
        bool h1_bounded = true;
        bool h2_bounded = true;
    };

    // Both bounds at the true channels; singular cases are reported as +inf rather than thrown
    CrlbReport crlb_report(const CMatrix &h2_true, const CVector &h1_true, const CMatrix &omega1, const CMatrix &omega2,
                           double eps1, double eps2, double power_p, double sigma2);

    // ||truth - estimate||^2 / ||truth||^2 (Frobenius)
    double nmse(const CMatrix &truth, const CMatrix &estimate);

    // Root mean square of a list of errors
    double rms(std::span<const double> errors);

    // Per-axis RMS deviation (theta, phi) between true angles and estimates
    std::pair<double, double> angular_rmse(std::span<const Angles> truth, std::span<const AoaEstimate> estimates);

    struct ConfidenceInterval
    {
        double estimate = 0.0;
        double lower = 0.0;
        double upper = 0.0;

        bool excludes_zero() const { return lower > 0.0 || upper < 0.0; }
    };

    // Percentile bootstrap interval for the mean
    ConfidenceInterval bootstrap_mean_ci(std::span<const double> values, std::uint64_t seed, int resamples = 1000,
                                         double level = 0.95);

    // Percentile bootstrap interval for mean(a) - mean(b), samples resampled independently
    ConfidenceInterval bootstrap_diff_ci(std::span<const double> a, std::span<const double> b, std::uint64_t seed,
                                         int resamples = 1000, double level = 0.95);
}

#endif
