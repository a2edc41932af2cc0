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

#include "hris/anm.hpp"

#include <cmath>

#include "hris/errors.hpp"

namespace hris
{
    namespace
    {
        using EigenSolver = Eigen::SelfAdjointEigenSolver<CMatrix>;

        // f(x) = 0.5 || y - A x ||^2 on a column vector x
        class LeftOperatorFit
        {
        public:
            LeftOperatorFit(const CMatrix &a, const CVector &y) : a_(a), y_(y), a_h_y_(a.adjoint() * y)
            {
                EigenSolver es(a.adjoint() * a);
                basis_ = es.eigenvectors();
                gram_eigs_ = es.eigenvalues().cwiseMax(0.0);
            }

            // argmin_x f(x) + rho || x - v ||^2
            CMatrix prox(const CMatrix &v, double rho) const
            {
                CVector coeffs = basis_.adjoint() * (a_h_y_ + 2.0 * rho * v.col(0));
                coeffs.array() /= (gram_eigs_.array() + 2.0 * rho);
                return basis_ * coeffs;
            }

            double fit(const CMatrix &x) const { return 0.5 * (y_ - a_ * x.col(0)).squaredNorm(); }

        private:
            const CMatrix &a_;
            const CVector &y_;
            CVector a_h_y_;
            CMatrix basis_;
            RVector gram_eigs_;
        };

        // f(X) = 0.5 || Y - X C ||_F^2
        class RightOperatorFit
        {
        public:
            RightOperatorFit(const CMatrix &c, const CMatrix &y) : c_(c), y_(y), y_c_h_(y * c.adjoint())
            {
                EigenSolver es(c * c.adjoint());
                basis_ = es.eigenvectors();
                gram_eigs_ = es.eigenvalues().cwiseMax(0.0);
            }

            CMatrix prox(const CMatrix &v, double rho) const
            {
                CMatrix rotated = (y_c_h_ + 2.0 * rho * v) * basis_;
                for (Eigen::Index i = 0; i < rotated.cols(); ++i)
                    rotated.col(i) /= (gram_eigs_(i) + 2.0 * rho);
                return rotated * basis_.adjoint();
            }

            double fit(const CMatrix &x) const { return 0.5 * (y_ - x * c_).squaredNorm(); }

        private:
            const CMatrix &c_;
            const CMatrix &y_;
            CMatrix y_c_h_;
            CMatrix basis_;
            RVector gram_eigs_;
        };

        // PSD variable [[S1, X], [X^H, S2]] with S1 (p x p) and S2 (q x q) 2-level Toeplitz and a
        // linear cost w1 Tr(S1) + w2 Tr(S2).
        struct BlockLayout
        {
            int p;
            int q;
            int s1_mx, s1_my;
            int s2_mx, s2_my;
            double w1;
            double w2;
        };

        struct AdmmResult
        {
            CMatrix s1, x, s2;
            std::vector<double> objective_trace;
            double primal_residual = 0.0;
            double dual_residual = 0.0;
            double min_eig_rel = 0.0;
            bool converged = false;
            int iterations = 0;
        };

        CMatrix project_psd(const CMatrix &w, EigenSolver &es)
        {
            es.compute(w);
            const RVector &ev = es.eigenvalues(); // ascending
            const Eigen::Index n = ev.size();
            Eigen::Index first = 0;
            while (first < n && ev(first) <= 0.0)
                ++first;
            const Eigen::Index k = n - first;
            if (k == 0)
                return CMatrix::Zero(n, n);
            const auto u = es.eigenvectors().rightCols(k);
            return (u * ev.tail(k).asDiagonal()) * u.adjoint();
        }

        template <class Fit>
        AdmmResult run_admm(const BlockLayout &layout, const Fit &fit, const SolverOptions &opts)
        {
            const int p = layout.p;
            const int q = layout.q;
            const int n = p + q;
            CMatrix z = CMatrix::Zero(n, n);
            CMatrix lambda = CMatrix::Zero(n, n);
            CMatrix theta(n, n);
            double rho = opts.rho;
            EigenSolver es(n);

            AdmmResult res;
            if (opts.record_objective)
                res.objective_trace.reserve(static_cast<std::size_t>(opts.max_iters));

            const CMatrix eye_p = CMatrix::Identity(p, p);
            const CMatrix eye_q = CMatrix::Identity(q, q);
            const double dim_scale = static_cast<double>(n);

            for (int it = 1; it <= opts.max_iters; ++it)
            {
                res.s1 = project_onto_toeplitz(z.topLeftCorner(p, p) - (lambda.topLeftCorner(p, p) + layout.w1 * eye_p) / rho,
                                               layout.s1_mx, layout.s1_my);
                res.s2 = project_onto_toeplitz(z.bottomRightCorner(q, q) - (lambda.bottomRightCorner(q, q) + layout.w2 * eye_q) / rho,
                                               layout.s2_mx, layout.s2_my);
                res.x = fit.prox(z.topRightCorner(p, q) - lambda.topRightCorner(p, q) / rho, rho);

                theta.topLeftCorner(p, p) = res.s1;
                theta.topRightCorner(p, q) = res.x;
                theta.bottomLeftCorner(q, p) = res.x.adjoint();
                theta.bottomRightCorner(q, q) = res.s2;

                const CMatrix z_prev = z;
                const CMatrix relaxed = opts.relaxation * theta + (1.0 - opts.relaxation) * z_prev;
                z = project_psd(relaxed + lambda / rho, es);
                lambda += rho * (relaxed - z);

                const double r = (theta - z).norm();
                const double s = rho * (z - z_prev).norm();
                const double eps_pri = opts.abs_tol * dim_scale + opts.rel_tol * std::max(theta.norm(), z.norm());
                const double eps_dual = opts.abs_tol * dim_scale + opts.rel_tol * lambda.norm();

                if (opts.record_objective)
                    res.objective_trace.push_back(layout.w1 * res.s1.trace().real() + layout.w2 * res.s2.trace().real() +
                                                  fit.fit(res.x));
                res.iterations = it;
                res.primal_residual = r / std::max(1e-300, std::max(theta.norm(), z.norm()));
                res.dual_residual = s / std::max(1e-300, lambda.norm());

                if (r <= eps_pri && s <= eps_dual)
                {
                    res.converged = true;
                    break;
                }

                if (it % std::max(1, opts.adapt_interval) != 0)
                    continue;
                // Balance the residuals relative to their own tolerances
                const double r_scaled = r / eps_pri;
                const double s_scaled = s / eps_dual;
                if (r_scaled > opts.balance_ratio * s_scaled)
                    rho *= opts.rho_step;
                else if (s_scaled > opts.balance_ratio * r_scaled)
                    rho /= opts.rho_step;
            }

            es.compute(theta, Eigen::EigenvaluesOnly);
            const double tr = theta.trace().real();
            res.min_eig_rel = tr > 0.0 ? es.eigenvalues()(0) / tr : 0.0;
            return res;
        }
    }

    double rms_column_norm(const CMatrix &a)
    {
        if (a.cols() == 0)
            return 0.0;
        return a.norm() / std::sqrt(static_cast<double>(a.cols()));
    }

    double anm_regularizer(double sigma, double gain, int dim, double scale)
    {
        if (dim < 1)
            throw InvalidArgument("regularizer dimension must be >= 1");
        const double d = static_cast<double>(dim);
        return scale * sigma * gain * std::sqrt(d * std::log(d));
    }

    double anm_h1_objective(const CVector &y, const CMatrix &sensing, double mu, const CVector &h,
                            double toeplitz_trace, double t)
    {
        const double m = static_cast<double>(h.size());
        return mu * (toeplitz_trace / (2.0 * m) + 0.5 * t) + 0.5 * (y - sensing * h).squaredNorm();
    }

    AnmSolution solve_anm_h1(const CVector &y, const CMatrix &sensing, double mu, const ArrayGeometry &geom,
                             const SolverOptions &opts)
    {
        geom.validate();
        const int m = geom.m();
        if (sensing.cols() != m)
            throw DimensionError("sensing operator must have M columns");
        if (sensing.rows() != y.size())
            throw DimensionError("sensing operator rows must match the measurement length");
        if (mu < 0.0)
            throw InvalidArgument("regularizer must be nonnegative");

        AnmSolution sol;
        sol.toeplitz.assign(1, TwoLevelToeplitz(geom.m_x, geom.m_y));
        sol.estimate = CMatrix::Zero(m, 1);

        const double beta = y.norm();
        const double kappa = rms_column_norm(sensing);
        if (beta == 0.0 || kappa == 0.0)
        {
            // Zero is optimal for zero data; a zero operator carries no information.
            sol.converged = beta == 0.0;
            sol.data_fit = 0.5 * beta * beta;
            sol.objective = sol.data_fit;
            sol.mu = mu;
            return sol;
        }

        // Normalized problem: y_n = y / beta, A_n = A / kappa, h = (beta / kappa) x
        const CVector y_n = y / beta;
        const CMatrix a_n = sensing / kappa;
        const double mu_n = std::max(mu / (beta * kappa), opts.mu_floor);
        const double alpha = beta / kappa;

        LeftOperatorFit fit(a_n, y_n);
        const BlockLayout layout{m, 1, geom.m_x, geom.m_y, 1, 1, mu_n / (2.0 * m), mu_n / 2.0};
        AdmmResult res = run_admm(layout, fit, opts);

        sol.mu = mu_n * beta * kappa;
        sol.estimate = alpha * res.x;
        sol.toeplitz[0] = TwoLevelToeplitz::project(alpha * res.s1, geom.m_x, geom.m_y);
        sol.t = alpha * res.s2(0, 0).real();
        sol.data_fit = beta * beta * fit.fit(res.x);
        sol.objective = sol.mu * (sol.toeplitz[0].trace() / (2.0 * m) + 0.5 * sol.t) + sol.data_fit;
        sol.objective_trace = std::move(res.objective_trace);
        for (double &v : sol.objective_trace)
            v *= beta * beta;
        sol.primal_residual = res.primal_residual;
        sol.dual_residual = res.dual_residual;
        sol.min_eig_rel = res.min_eig_rel;
        sol.converged = res.converged;
        sol.iterations = res.iterations;
        return sol;
    }

    AnmSolution solve_anm_h2(const CMatrix &y_b_mat, const CVector &h1_hat, const CMatrix &omega1, double eps1,
                             double power_p, double mu, const ArrayGeometry &geom, const SolverOptions &opts)
    {
        geom.validate();
        const int m = geom.m();
        const int n = geom.n_bs;
        if (h1_hat.size() != m || omega1.rows() != m)
            throw DimensionError("h1 estimate and reflection schedule must have M rows");
        if (y_b_mat.rows() != n || y_b_mat.cols() != omega1.cols())
            throw DimensionError("Y_B must be N x K");
        if (mu < 0.0)
            throw InvalidArgument("regularizer must be nonnegative");

        // Y_B = H2 C with C = sqrt(P) eps1 diag(h1) Omega1 (M x K)
        const CMatrix c = std::sqrt(power_p) * eps1 * (h1_hat.asDiagonal() * omega1);
        const double kappa = c.norm() / std::sqrt(static_cast<double>(m));
        if (!(kappa > 0.0) || !std::isfinite(kappa))
            throw IllConditioned("reflected-signal operator vanishes (zero channel estimate or eps1 = 0)");

        AnmSolution sol;
        sol.toeplitz = {TwoLevelToeplitz(n, 1), TwoLevelToeplitz(geom.m_x, geom.m_y)};
        sol.estimate = CMatrix::Zero(n, m);

        const double beta = y_b_mat.norm();
        if (beta == 0.0)
        {
            sol.converged = true;
            sol.mu = mu;
            return sol;
        }

        const CMatrix y_n = y_b_mat / beta;
        const CMatrix c_n = c / kappa;
        const double mu_n = std::max(mu / (beta * kappa), opts.mu_floor);
        const double alpha = beta / kappa;

        RightOperatorFit fit(c_n, y_n);
        const BlockLayout layout{n, m, n, 1, geom.m_x, geom.m_y, mu_n / (2.0 * n), mu_n / (2.0 * m)};
        AdmmResult res = run_admm(layout, fit, opts);

        sol.mu = mu_n * beta * kappa;
        sol.estimate = alpha * res.x;
        sol.toeplitz[0] = TwoLevelToeplitz::project(alpha * res.s1, n, 1);
        sol.toeplitz[1] = TwoLevelToeplitz::project(alpha * res.s2, geom.m_x, geom.m_y);
        sol.data_fit = beta * beta * fit.fit(res.x);
        sol.objective = sol.mu * (sol.toeplitz[0].trace() / (2.0 * n) + sol.toeplitz[1].trace() / (2.0 * m)) + sol.data_fit;
        sol.objective_trace = std::move(res.objective_trace);
        for (double &v : sol.objective_trace)
            v *= beta * beta;
        sol.primal_residual = res.primal_residual;
        sol.dual_residual = res.dual_residual;
        sol.min_eig_rel = res.min_eig_rel;
        sol.converged = res.converged;
        sol.iterations = res.iterations;
        return sol;
    }
}
