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

#ifndef HRIS_TOEPLITZ_HPP
#define HRIS_TOEPLITZ_HPP

#include "hris/types.hpp"

namespace hris
{
    // Hermitian 2-level Toeplitz matrix of size (m_x m_y) x (m_x m_y), stored through its lag
    // generator g(p, q), p in [-(m_x-1), m_x-1], q in [-(m_y-1), m_y-1]. Entry ((a, b), (c, d)) of
    // the materialized matrix, with row index a * m_y + b, equals g(a - c, b - d). A 1-level
    // Toeplitz matrix is the case m_y = 1; a real scalar is m_x = m_y = 1.
    class TwoLevelToeplitz
    {
    public:
        TwoLevelToeplitz() : TwoLevelToeplitz(1, 1) {}
        TwoLevelToeplitz(int m_x, int m_y);

        int m_x() const { return m_x_; }
        int m_y() const { return m_y_; }
        int size() const { return m_x_ * m_y_; }

        cdouble lag(int p, int q) const { return gen_(p + m_x_ - 1, q + m_y_ - 1); }

        // Sets g(p, q) and its mirror g(-p, -q) = conj(g(p, q))
        void set_lag(int p, int q, cdouble value);

        // (2 m_x - 1) x (2 m_y - 1) lag table, lag (0, 0) at the center
        const CMatrix &generator() const { return gen_; }

        CMatrix materialize() const;
        double trace() const { return size() * gen_(m_x_ - 1, m_y_ - 1).real(); }

        // Number of matrix entries sharing the lag (p, q)
        int multiplicity(int p, int q) const;

        // Max deviation from g(-p, -q) = conj(g(p, q))
        double hermitian_defect() const;

        // Least-squares (Frobenius) projection of a Hermitian matrix onto the 2-level Toeplitz
        // subspace: each lag takes the mean of the entries that share it.
        static TwoLevelToeplitz project(const CMatrix &h, int m_x, int m_y);

    private:
        int m_x_;
        int m_y_;
        CMatrix gen_;
    };

    // materialize(project(h)), without building the generator object
    CMatrix project_onto_toeplitz(const CMatrix &h, int m_x, int m_y);
}

#endif
