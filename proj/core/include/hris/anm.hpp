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

#ifndef HRIS_ANM_HPP
#define HRIS_ANM_HPP

#include <vector>

#include "hris/array_geometry.hpp"
#include "hris/toeplitz.hpp"
#include "hris/types.hpp"

namespace hris
{
    // Options of the ADMM solver for the atomic-norm programs. Tolerances apply to the internally
    // normalized problem (unit-norm data, unit-RMS operator columns).
    struct SolverOptions
    {
        double rel_tol = 1e-6;      // relative primal/dual residual target
        double abs_tol = 1e-9;      // absolute residual floor
        int max_iters = 2000;       //
        double rho = 1.0;           // initial penalty parameter
        double balance_ratio = 10.0; // adapt rho when one residual exceeds the other by this ratio
        double rho_step = 2.0;      // multiplicative rho adaptation
        double relaxation = 1.0;    // over-relaxation factor in (0, 2)
        int adapt_interval = 1;     // iterations between rho updates
        double reg_scale = 1.0;     // constant in front of the noise-level regularizer
        double mu_floor = 1e-8;     // lower bound on the normalized regularizer
        bool record_objective = true;
    };

    struct AnmSolution
    {
        CMatrix estimate;                       // M x 1 for h1, N x M for H2
        std::vector<TwoLevelToeplitz> toeplitz; // {U1} for h1, {U21 (BS), U22 (HRIS)} for H2
        double t = 0.0;                         // scalar block (h1 problem only)
        double mu = 0.0;                        // regularizer actually used (after flooring)
        double objective = 0.0;                 // penalty + data fit at the returned point
        double data_fit = 0.0;                  // 0.5 * squared residual at the returned point
        std::vector<double> objective_trace;    // per iteration
        double primal_residual = 0.0;           // relative, at termination
        double dual_residual = 0.0;             // relative, at termination
        double min_eig_rel = 0.0;               // min eigenvalue of the PSD block / its trace
        bool converged = false;
        int iterations = 0;

        CVector vector() const { return estimate.col(0); }
    };

    // sqrt(sum |a_ij|^2 / cols): the RMS column norm of a measurement operator
    double rms_column_norm(const CMatrix &a);

    // scale * sigma * gain * sqrt(dim * ln(dim)), the noise-level regularizer for a parameter of
    // dimension dim observed through an operator with RMS column norm gain
    double anm_regularizer(double sigma, double gain, int dim, double scale = 1.0);

    // min_h mu * [Tr(Toep(U1)) / (2 M) + t / 2] + 0.5 || y - sensing h ||^2
    //   s.t. [[Toep(U1), h], [h^H, t]] >= 0,  Toep(U1) 2-level Toeplitz over the HRIS grid.
    // Returns with converged = false when the iteration cap is hit.
    AnmSolution solve_anm_h1(const CVector &y, const CMatrix &sensing, double mu, const ArrayGeometry &geom,
                             const SolverOptions &opts = {});

    // min_H mu * [Tr(Toep(U21)) / (2 N) + Tr(Toep(U22)) / (2 M)] + 0.5 || Y - sqrt(P) eps1 H diag(h1) Omega1 ||^2
    //   s.t. [[Toep(U21), H], [H^H, Toep(U22)]] >= 0, U21 1-level (BS ULA), U22 2-level (HRIS UPA).
    // Throws IllConditioned when the reflected operator vanishes (h1_hat = 0 or eps1 = 0).
    AnmSolution solve_anm_h2(const CMatrix &y_b_mat, const CVector &h1_hat, const CMatrix &omega1, double eps1,
                             double power_p, double mu, const ArrayGeometry &geom, const SolverOptions &opts = {});

    // Objective of the h1 program at a given point; used to score solutions independently of the solver
    double anm_h1_objective(const CVector &y, const CMatrix &sensing, double mu, const CVector &h,
                            double toeplitz_trace, double t);
}

#endif
