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

#include "hris/toeplitz.hpp"

#include <algorithm>
#include <cstdlib>

#include "hris/errors.hpp"

namespace hris
{
    TwoLevelToeplitz::TwoLevelToeplitz(int m_x, int m_y) : m_x_(m_x), m_y_(m_y)
    {
        if (m_x < 1 || m_y < 1)
            throw InvalidArgument("Toeplitz block sizes must be >= 1");
        gen_ = CMatrix::Zero(2 * m_x - 1, 2 * m_y - 1);
    }

    void TwoLevelToeplitz::set_lag(int p, int q, cdouble value)
    {
        if (std::abs(p) >= m_x_ || std::abs(q) >= m_y_)
            throw InvalidArgument("Toeplitz lag out of range");
        if (p == 0 && q == 0)
            value = value.real();
        gen_(p + m_x_ - 1, q + m_y_ - 1) = value;
        gen_(-p + m_x_ - 1, -q + m_y_ - 1) = std::conj(value);
    }

    CMatrix TwoLevelToeplitz::materialize() const
    {
        const int n = size();
        CMatrix out(n, n);
        for (int a = 0; a < m_x_; ++a)
            for (int c = 0; c < m_x_; ++c)
                for (int b = 0; b < m_y_; ++b)
                    for (int d = 0; d < m_y_; ++d)
                        out(a * m_y_ + b, c * m_y_ + d) = gen_(a - c + m_x_ - 1, b - d + m_y_ - 1);
        return out;
    }

    int TwoLevelToeplitz::multiplicity(int p, int q) const
    {
        return (m_x_ - std::abs(p)) * (m_y_ - std::abs(q));
    }

    double TwoLevelToeplitz::hermitian_defect() const
    {
        double worst = 0.0;
        for (int p = -(m_x_ - 1); p < m_x_; ++p)
            for (int q = -(m_y_ - 1); q < m_y_; ++q)
                worst = std::max(worst, std::abs(lag(p, q) - std::conj(lag(-p, -q))));
        return worst;
    }

    TwoLevelToeplitz TwoLevelToeplitz::project(const CMatrix &h, int m_x, int m_y)
    {
        if (h.rows() != h.cols() || h.rows() != m_x * m_y)
            throw DimensionError("Toeplitz projection: matrix size does not match m_x * m_y");
        TwoLevelToeplitz out(m_x, m_y);
        for (int a = 0; a < m_x; ++a)
            for (int c = 0; c < m_x; ++c)
                for (int b = 0; b < m_y; ++b)
                    for (int d = 0; d < m_y; ++d)
                        out.gen_(a - c + m_x - 1, b - d + m_y - 1) += h(a * m_y + b, c * m_y + d);
        for (int p = -(m_x - 1); p < m_x; ++p)
            for (int q = -(m_y - 1); q < m_y; ++q)
                out.gen_(p + m_x - 1, q + m_y - 1) /= static_cast<double>(out.multiplicity(p, q));
        out.gen_(m_x - 1, m_y - 1) = out.gen_(m_x - 1, m_y - 1).real();
        return out;
    }

    CMatrix project_onto_toeplitz(const CMatrix &h, int m_x, int m_y)
    {
        return TwoLevelToeplitz::project(h, m_x, m_y).materialize();
    }
}
