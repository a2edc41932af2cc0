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

#include "hris/aoa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "hris/errors.hpp"

namespace hris
{
    namespace
    {
        double wrap_frequency(double f)
        {
            f -= std::floor(f + 0.5);
            return f; // [-1/2, 1/2)
        }

        // Coefficients c_k = sum of the k-th superdiagonal of c, k = -(L-1)..(L-1), index k + L - 1
        CVector diagonal_sums(const CMatrix &c)
        {
            const Eigen::Index l = c.rows();
            CVector out = CVector::Zero(2 * l - 1);
            for (Eigen::Index r = 0; r < l; ++r)
                for (Eigen::Index col = 0; col < l; ++col)
                    out(col - r + l - 1) += c(r, col);
            return out;
        }

        // Null spectrum Q(f) = a(f)^H C a(f) = sum_k c_k exp(j 2 pi f k) and its first two derivatives
        struct SpectrumSample
        {
            double value, d1, d2;
        };

        SpectrumSample null_spectrum(const CVector &coeffs, double f)
        {
            const Eigen::Index l = (coeffs.size() + 1) / 2;
            SpectrumSample s{0.0, 0.0, 0.0};
            for (Eigen::Index i = 0; i < coeffs.size(); ++i)
            {
                const double k = static_cast<double>(i - (l - 1));
                const cdouble term = coeffs(i) * expj(two_pi * f * k);
                s.value += term.real();
                s.d1 += (imag_unit * (two_pi * k) * term).real();
                s.d2 += -(two_pi * k) * (two_pi * k) * term.real();
            }
            return s;
        }

        double polish_frequency(const CVector &coeffs, double f)
        {
            const double max_step = 0.25 / static_cast<double>((coeffs.size() + 1) / 2);
            const double start = f;
            for (int it = 0; it < 30; ++it)
            {
                const SpectrumSample s = null_spectrum(coeffs, f);
                if (!(s.d2 > 0.0))
                    break;
                const double step = s.d1 / s.d2;
                if (!std::isfinite(step) || std::abs(f - step - start) > max_step)
                    break;
                f -= step;
                if (std::abs(step) < 1e-15)
                    break;
            }
            return f;
        }

        std::vector<cdouble> polynomial_roots(const CVector &coeffs_low_to_high)
        {
            // Trim vanishing leading coefficients (roots at infinity)
            Eigen::Index deg = coeffs_low_to_high.size() - 1;
            const double scale = coeffs_low_to_high.cwiseAbs().maxCoeff();
            while (deg > 0 && std::abs(coeffs_low_to_high(deg)) <= 1e-14 * scale)
                --deg;
            std::vector<cdouble> roots;
            if (deg < 1)
                return roots;
            CMatrix companion = CMatrix::Zero(deg, deg);
            for (Eigen::Index i = 0; i < deg; ++i)
                companion(0, i) = -coeffs_low_to_high(deg - 1 - i) / coeffs_low_to_high(deg);
            for (Eigen::Index i = 1; i < deg; ++i)
                companion(i, i - 1) = 1.0;
            Eigen::ComplexEigenSolver<CMatrix> es(companion, false);
            if (es.info() != Eigen::Success)
                throw EstimationFailure("root-MUSIC: companion eigen-decomposition failed");
            for (Eigen::Index i = 0; i < deg; ++i)
                roots.push_back(es.eigenvalues()(i));
            return roots;
        }

        CVector planar_atom(double fx, double fy, int m_x, int m_y)
        {
            const CVector ax = line_spectrum_vector(fx, m_x);
            const CVector ay = line_spectrum_vector(fy, m_y);
            CVector out(m_x * m_y);
            for (int ix = 0; ix < m_x; ++ix)
                out.segment(ix * m_y, m_y) = ax(ix) * ay;
            return out;
        }

        std::vector<double> axis_frequencies(const CVector &h, const ArrayGeometry &geom, int sub_x, int sub_y,
                                             int axis_len, int n_sources, bool polish)
        {
            const int sub = sub_x * sub_y; // one of the two is 1
            if (axis_len == 1 || sub == 1)
                return {0.0};
            const int n = std::min(n_sources, sub - 1);
            const CMatrix cov = spatial_smooth(h, geom, sub_x, sub_y, 1);
            return root_music_1d(cov, n, polish);
        }

        // All injective assignments of min(nx, ny) x-indices to y-indices
        void enumerate_pairings(std::size_t nx, std::size_t ny, std::vector<std::vector<std::pair<std::size_t, std::size_t>>> &out)
        {
            const std::size_t n = std::min(nx, ny);
            std::vector<std::size_t> larger(std::max(nx, ny));
            std::iota(larger.begin(), larger.end(), 0);
            // Permutations of the larger set; the first n entries define the assignment. Duplicates
            // from permuting the tail are skipped.
            std::sort(larger.begin(), larger.end());
            std::vector<std::vector<std::size_t>> seen;
            do
            {
                std::vector<std::size_t> head(larger.begin(), larger.begin() + static_cast<long>(n));
                if (std::find(seen.begin(), seen.end(), head) != seen.end())
                    continue;
                seen.push_back(head);
                std::vector<std::pair<std::size_t, std::size_t>> assign;
                for (std::size_t i = 0; i < n; ++i)
                    assign.emplace_back(nx <= ny ? i : head[i], nx <= ny ? head[i] : i);
                out.push_back(std::move(assign));
            } while (std::next_permutation(larger.begin(), larger.end()));
        }
    }

    CMatrix spatial_smooth(const CVector &h, const ArrayGeometry &geom, int s_x, int s_y, int n_sources)
    {
        geom.validate();
        if (h.size() != geom.m())
            throw DimensionError("spatial_smooth: channel length must equal M");
        if (s_x < 1 || s_x > geom.m_x || s_y < 1 || s_y > geom.m_y)
            throw InvalidArgument("spatial_smooth: subarray does not fit the array");
        const int slices_x = geom.m_x - s_x + 1;
        const int slices_y = geom.m_y - s_y + 1;
        if (slices_x * slices_y < n_sources)
            throw InvalidArgument("spatial_smooth: subarray too large for " + std::to_string(n_sources) +
                                  " sources (" + std::to_string(slices_x * slices_y) + " snapshots)");

        const int dim = s_x * s_y;
        CMatrix cov = CMatrix::Zero(dim, dim);
        CVector v(dim);
        for (int i = 0; i < slices_x; ++i)
            for (int k = 0; k < slices_y; ++k)
            {
                for (int a = 0; a < s_x; ++a)
                    for (int b = 0; b < s_y; ++b)
                        v(a * s_y + b) = h((i + a) * geom.m_y + (k + b));
                cov.noalias() += v * v.adjoint();
            }
        return cov / static_cast<double>(slices_x * slices_y);
    }

    std::vector<double> root_music_1d(const CMatrix &cov, int n_sources, bool polish)
    {
        const Eigen::Index l = cov.rows();
        if (cov.cols() != l)
            throw DimensionError("root_music_1d: covariance must be square");
        if (n_sources < 1 || n_sources >= l)
            throw InvalidArgument("root_music_1d: need 1 <= n_sources < covariance dimension");

        Eigen::SelfAdjointEigenSolver<CMatrix> es(cov);
        if (es.info() != Eigen::Success)
            throw EstimationFailure("root_music_1d: covariance eigen-decomposition failed");
        const CMatrix noise = es.eigenvectors().leftCols(l - n_sources); // ascending eigenvalues
        const CVector coeffs = diagonal_sums(noise * noise.adjoint());

        // z^(L-1) * Q(z): coefficient of z^i is c_{i-L+1}, which is coeffs(i)
        const std::vector<cdouble> roots = polynomial_roots(coeffs);

        // Roots come in (z, 1/conj(z)) pairs with equal angle; rank by distance to the unit circle
        // and drop repeats of an already selected frequency.
        std::vector<std::size_t> order(roots.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return std::abs(std::abs(roots[a]) - 1.0) < std::abs(std::abs(roots[b]) - 1.0);
        });

        std::vector<double> freqs;
        for (std::size_t idx : order)
        {
            if (static_cast<int>(freqs.size()) == n_sources)
                break;
            if (roots[idx] == cdouble(0.0))
                continue;
            double f = std::arg(roots[idx]) / two_pi;
            if (polish)
                f = polish_frequency(coeffs, f);
            f = wrap_frequency(f);
            const bool repeat = std::any_of(freqs.begin(), freqs.end(), [&](double g) {
                return std::abs(wrap_frequency(f - g)) < 1e-6;
            });
            if (!repeat)
                freqs.push_back(f);
        }
        if (static_cast<int>(freqs.size()) < n_sources)
            throw EstimationFailure("root_music_1d: found " + std::to_string(freqs.size()) + " distinct roots, need " +
                                    std::to_string(n_sources));
        return freqs;
    }

    AoaEstimate estimate_los_aoa(const CVector &h_hat, const ArrayGeometry &geom, int n_paths, const AoaOptions &opts)
    {
        geom.validate();
        if (n_paths < 1)
            throw InvalidArgument("estimate_los_aoa: n_paths must be >= 1");
        if (h_hat.size() != geom.m())
            throw DimensionError("estimate_los_aoa: channel length must equal M");
        const double h_norm = h_hat.norm();
        if (!(h_norm > 0.0) || !std::isfinite(h_norm))
            throw EstimationFailure("estimate_los_aoa: channel estimate is zero or not finite");

        const int sx = opts.subarray_x > 0 ? opts.subarray_x : (geom.m_x + 2) / 2;
        const int sy = opts.subarray_y > 0 ? opts.subarray_y : (geom.m_y + 2) / 2;

        const std::vector<double> fx = axis_frequencies(h_hat, geom, sx, 1, geom.m_x, n_paths, opts.polish);
        const std::vector<double> fy = axis_frequencies(h_hat, geom, 1, sy, geom.m_y, n_paths, opts.polish);

        std::vector<std::vector<std::pair<std::size_t, std::size_t>>> pairings;
        enumerate_pairings(fx.size(), fy.size(), pairings);

        double best_residual = std::numeric_limits<double>::infinity();
        std::vector<PathCandidate> best;
        for (const auto &assign : pairings)
        {
            CMatrix atoms(geom.m(), static_cast<Eigen::Index>(assign.size()));
            for (std::size_t i = 0; i < assign.size(); ++i)
                atoms.col(static_cast<Eigen::Index>(i)) = planar_atom(fx[assign[i].first], fy[assign[i].second], geom.m_x, geom.m_y);
            const CVector amp = atoms.colPivHouseholderQr().solve(h_hat);
            const double residual = (h_hat - atoms * amp).norm() / h_norm;
            if (residual < best_residual)
            {
                best_residual = residual;
                best.clear();
                for (std::size_t i = 0; i < assign.size(); ++i)
                    best.push_back({fx[assign[i].first], fy[assign[i].second], amp(static_cast<Eigen::Index>(i))});
            }
        }
        std::stable_sort(best.begin(), best.end(),
                         [](const PathCandidate &a, const PathCandidate &b) { return std::abs(a.amplitude) > std::abs(b.amplitude); });

        AoaEstimate out;
        out.paths = best;
        out.fx = best.front().fx;
        out.fy = best.front().fy;
        out.pairing_residual = best_residual;
        out.low_confidence = !(best_residual <= opts.residual_threshold);
        const Angles ang = angles_from_direction_cosines(out.fx * geom.wavelength / geom.d1x,
                                                         out.fy * geom.wavelength / geom.d1y);
        out.theta = ang.theta;
        out.phi = ang.phi;
        return out;
    }
}
