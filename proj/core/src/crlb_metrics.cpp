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

#include "hris/crlb_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "hris/errors.hpp"
#include "hris/rng.hpp"

namespace hris
{
    namespace
    {
        RVector gram_eigenvalues(const CMatrix &gram)
        {
            Eigen::SelfAdjointEigenSolver<CMatrix> es(gram, Eigen::EigenvaluesOnly);
            if (es.info() != Eigen::Success)
                throw UnboundedCrlb("Gram eigen-decomposition failed");
            return es.eigenvalues();
        }

        double inverse_trace(const RVector &eig, const char *what)
        {
            const double top = eig.maxCoeff();
            const double bottom = eig.minCoeff();
            if (!(top > 0.0) || bottom <= crlb_rank_tol * top)
                throw UnboundedCrlb(std::string(what) + ": Gram matrix is rank deficient (min/max eigenvalue " +
                                    std::to_string(top > 0.0 ? bottom / top : 0.0) + ")");
            return eig.cwiseInverse().sum();
        }

        void check_power(double power_p, double sigma2)
        {
            if (!(power_p > 0.0))
                throw InvalidArgument("CRLB: transmit power must be positive");
            if (!(sigma2 >= 0.0))
                throw InvalidArgument("CRLB: noise variance must be nonnegative");
        }

        CMatrix reflected_operator(const CMatrix &omega1, const CVector &h1, int n_bs)
        {
            if (h1.size() != omega1.rows())
                throw DimensionError("crlb_h2: h1 length must equal schedule rows");
            if (n_bs < 1)
                throw InvalidArgument("crlb_h2: N must be >= 1");
            const CMatrix small = omega1.transpose() * h1.asDiagonal(); // K x M
            const Eigen::Index k = small.rows(), m = small.cols();
            CMatrix w = CMatrix::Zero(k * n_bs, m * n_bs);
            for (Eigen::Index r = 0; r < k; ++r)
                for (Eigen::Index c = 0; c < m; ++c)
                    for (int n = 0; n < n_bs; ++n)
                        w(r * n_bs + n, c * n_bs + n) = small(r, c);
            return w;
        }

        double percentile(std::vector<double> &sorted_values, double q)
        {
            // Linear interpolation between order statistics
            const double pos = q * static_cast<double>(sorted_values.size() - 1);
            const auto lo = static_cast<std::size_t>(std::floor(pos));
            const auto hi = std::min(lo + 1, sorted_values.size() - 1);
            const double frac = pos - static_cast<double>(lo);
            return sorted_values[lo] + frac * (sorted_values[hi] - sorted_values[lo]);
        }

        double mean(std::span<const double> v)
        {
            return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
        }

        double resampled_mean(std::span<const double> v, Rng &rng)
        {
            std::uniform_int_distribution<std::size_t> pick(0, v.size() - 1);
            double s = 0.0;
            for (std::size_t i = 0; i < v.size(); ++i)
                s += v[pick(rng)];
            return s / static_cast<double>(v.size());
        }

        ConfidenceInterval interval(std::vector<double> &stats, double estimate, double level)
        {
            std::sort(stats.begin(), stats.end());
            const double tail = 0.5 * (1.0 - level);
            return {estimate, percentile(stats, tail), percentile(stats, 1.0 - tail)};
        }

        void check_bootstrap(std::size_t n, int resamples, double level)
        {
            if (n == 0)
                throw InvalidArgument("bootstrap: empty sample");
            if (resamples < 1)
                throw InvalidArgument("bootstrap: resamples must be >= 1");
            if (!(level > 0.0 && level < 1.0))
                throw InvalidArgument("bootstrap: level must lie in (0, 1)");
        }
    }

    double crlb_h1_min_eig(const CMatrix &a_rb)
    {
        return gram_eigenvalues(a_rb.adjoint() * a_rb).minCoeff();
    }

    double crlb_h1(const CMatrix &a_rb, double power_p, double sigma2)
    {
        check_power(power_p, sigma2);
        return sigma2 / (2.0 * power_p) * inverse_trace(gram_eigenvalues(a_rb.adjoint() * a_rb), "crlb_h1");
    }

    double crlb_h2_min_eig(const CMatrix &omega1, const CVector &h1, int n_bs, double eps1)
    {
        const CMatrix w = reflected_operator(omega1, h1, n_bs);
        return eps1 * eps1 * gram_eigenvalues(w.adjoint() * w).minCoeff();
    }

    double crlb_h2(const CMatrix &omega1, const CVector &h1, int n_bs, double eps1, double power_p, double sigma2)
    {
        check_power(power_p, sigma2);
        if (!(eps1 > 0.0))
            throw UnboundedCrlb("crlb_h2: eps1 = 0, the reflected branch carries no information");
        if (omega1.cols() < omega1.rows())
            throw UnboundedCrlb("crlb_h2: K = " + std::to_string(omega1.cols()) + " < M = " +
                                std::to_string(omega1.rows()) + ", H2 is not identifiable");
        const CMatrix w = reflected_operator(omega1, h1, n_bs);
        const CMatrix gram = eps1 * eps1 * (w.adjoint() * w);
        return sigma2 / (2.0 * power_p) * inverse_trace(gram_eigenvalues(gram), "crlb_h2");
    }

    CrlbReport crlb_report(const CMatrix &h2_true, const CVector &h1_true, const CMatrix &omega1, const CMatrix &omega2,
                           double eps1, double eps2, double power_p, double sigma2)
    {
        CrlbReport r;
        const CMatrix a_rb = build_a_rb(h2_true, HrisConfig(eps1, eps2, omega1, omega2));
        r.min_eig_h1 = crlb_h1_min_eig(a_rb);
        r.min_eig_h2 = crlb_h2_min_eig(omega1, h1_true, static_cast<int>(h2_true.rows()), eps1);
        try
        {
            r.crlb_h1 = crlb_h1(a_rb, power_p, sigma2);
        }
        catch (const UnboundedCrlb &)
        {
            r.crlb_h1 = std::numeric_limits<double>::infinity();
            r.h1_bounded = false;
        }
        try
        {
            r.crlb_h2 = crlb_h2(omega1, h1_true, static_cast<int>(h2_true.rows()), eps1, power_p, sigma2);
        }
        catch (const UnboundedCrlb &)
        {
            r.crlb_h2 = std::numeric_limits<double>::infinity();
            r.h2_bounded = false;
        }
        return r;
    }

    double nmse(const CMatrix &truth, const CMatrix &estimate)
    {
        if (truth.rows() != estimate.rows() || truth.cols() != estimate.cols())
            throw DimensionError("nmse: shape mismatch");
        const double denom = truth.squaredNorm();
        if (!(denom > 0.0))
            throw InvalidArgument("nmse: undefined for a zero reference");
        return (truth - estimate).squaredNorm() / denom;
    }

    double rms(std::span<const double> errors)
    {
        if (errors.empty())
            throw InvalidArgument("rms: empty list");
        double s = 0.0;
        for (double e : errors)
            s += e * e;
        return std::sqrt(s / static_cast<double>(errors.size()));
    }

    std::pair<double, double> angular_rmse(std::span<const Angles> truth, std::span<const AoaEstimate> estimates)
    {
        if (truth.empty() || truth.size() != estimates.size())
            throw InvalidArgument("angular_rmse: need equally long, nonempty lists");
        std::vector<double> dt, dp;
        for (std::size_t i = 0; i < truth.size(); ++i)
        {
            dt.push_back(estimates[i].theta - truth[i].theta);
            dp.push_back(estimates[i].phi - truth[i].phi);
        }
        return {rms(dt), rms(dp)};
    }

    ConfidenceInterval bootstrap_mean_ci(std::span<const double> values, std::uint64_t seed, int resamples, double level)
    {
        check_bootstrap(values.size(), resamples, level);
        Rng rng(seed);
        std::vector<double> stats(static_cast<std::size_t>(resamples));
        for (double &s : stats)
            s = resampled_mean(values, rng);
        return interval(stats, mean(values), level);
    }

    ConfidenceInterval bootstrap_diff_ci(std::span<const double> a, std::span<const double> b, std::uint64_t seed,
                                         int resamples, double level)
    {
        check_bootstrap(std::min(a.size(), b.size()), resamples, level);
        Rng rng(seed);
        std::vector<double> stats(static_cast<std::size_t>(resamples));
        for (double &s : stats)
        {
            const double ma = resampled_mean(a, rng);
            s = ma - resampled_mean(b, rng);
        }
        return interval(stats, mean(a) - mean(b), level);
    }
}
