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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "hris/array_geometry.hpp"
#include "hris/errors.hpp"

using namespace hris;

namespace
{
    // Scalar evaluation of exp(j * 2 pi * spacing / lambda * m * direction_cosine)
    cdouble scalar_element(double spacing, double lambda, int m, double cosine)
    {
        const double phase = 2.0 * pi * spacing / lambda * m * cosine;
        return {std::cos(phase), std::sin(phase)};
    }

    void expect_unit_modulus_leading_one(const CVector &v)
    {
        ASSERT_GT(v.size(), 0);
        EXPECT_EQ(v(0), cdouble(1.0, 0.0));
        for (Eigen::Index i = 0; i < v.size(); ++i)
            EXPECT_NEAR(std::abs(v(i)), 1.0, 1e-15);
    }
}

TEST(ArrayGeometry, ValidateRejectsBadFields)
{
    ArrayGeometry g = ArrayGeometry::half_wavelength(2, 3, 4, 0.1);
    EXPECT_NO_THROW(g.validate());
    EXPECT_EQ(g.m(), 6);
    EXPECT_DOUBLE_EQ(g.d1x, 0.05);

    ArrayGeometry bad = g;
    bad.m_x = 0;
    EXPECT_THROW(bad.validate(), InvalidArgument);
    bad = g;
    bad.d2z = 0.0;
    EXPECT_THROW(bad.validate(), InvalidArgument);
    bad = g;
    bad.wavelength = -1.0;
    EXPECT_THROW(bad.validate(), InvalidArgument);
}

TEST(ArrayGeometry, ScenarioRejectsCoincidentNodes)
{
    ScenarioGeometry s;
    EXPECT_NO_THROW(s.validate());
    s.bs_pos = s.hris_pos;
    EXPECT_THROW(s.validate(), GeometryError);
}

TEST(SteeringX, ZeroElevationIsAllOnes)
{
    const CVector v = steering_x(1.234, 0.0, 4, 0.5, 1.0);
    EXPECT_TRUE(v.isApprox(CVector::Ones(4)));
}

TEST(SteeringX, EndfireHalfWavelengthAlternates)
{
    const CVector v = steering_x(0.0, pi / 2, 2, 0.5, 1.0);
    EXPECT_NEAR(std::abs(v(0) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(v(1) + 1.0), 0.0, 1e-15);
}

TEST(SteeringX, MatchesScalarEvaluation)
{
    const double theta = pi / 3, phi = pi / 4;
    const CVector v = steering_x(theta, phi, 3, 0.5, 1.0);
    for (int m = 0; m < 3; ++m)
        EXPECT_NEAR(std::abs(v(m) - scalar_element(0.5, 1.0, m, std::cos(theta) * std::sin(phi))), 0.0, 1e-15);
}

TEST(SteeringY, TrivialCases)
{
    EXPECT_TRUE(steering_y(0.7, 0.0, 3, 0.5, 1.0).isApprox(CVector::Ones(3)));
    EXPECT_TRUE(steering_y(0.0, pi / 2, 5, 0.5, 1.0).isApprox(CVector::Ones(5)));
    const CVector v = steering_y(pi / 2, pi / 2, 2, 0.5, 1.0);
    EXPECT_NEAR(std::abs(v(1) + 1.0), 0.0, 1e-15);
}

TEST(SteeringUpa, BroadsideIsAllOnes)
{
    const ArrayGeometry g = ArrayGeometry::half_wavelength(2, 3, 1, 1.0);
    EXPECT_TRUE(steering_upa(0.3, 0.0, g).isApprox(CVector::Ones(6)));
}

TEST(SteeringUpa, SingleColumnEqualsYAxis)
{
    const ArrayGeometry g = ArrayGeometry::half_wavelength(1, 3, 1, 1.0);
    EXPECT_EQ(steering_upa(0.4, 0.9, g), steering_y(0.4, 0.9, 3, g.d1y, g.wavelength));
}

TEST(SteeringUpa, TwoByTwoExpansion)
{
    const ArrayGeometry g = ArrayGeometry::half_wavelength(2, 2, 1, 1.0);
    const double theta = pi / 4, phi = pi / 3;
    const cdouble ax1 = scalar_element(0.5, 1.0, 1, std::cos(theta) * std::sin(phi));
    const cdouble ay1 = scalar_element(0.5, 1.0, 1, std::sin(theta) * std::sin(phi));
    const CVector v = steering_upa(theta, phi, g);
    const cdouble expected[4] = {1.0, ay1, ax1, ax1 * ay1};
    for (int i = 0; i < 4; ++i)
        EXPECT_NEAR(std::abs(v(i) - expected[i]), 0.0, 1e-15) << "entry " << i;
}

TEST(SteeringBs, Cases)
{
    EXPECT_TRUE(steering_bs(pi / 2, 4, 0.5, 1.0).isApprox(CVector::Ones(4), 1e-15));
    const CVector v = steering_bs(0.0, 2, 0.5, 1.0);
    EXPECT_NEAR(std::abs(v(1) + 1.0), 0.0, 1e-15);
    const CVector w = steering_bs(pi / 3, 4, 0.5, 1.0);
    for (int n = 0; n < 4; ++n)
        EXPECT_NEAR(std::abs(w(n) - scalar_element(0.5, 1.0, n, std::cos(pi / 3))), 0.0, 1e-15);
}

TEST(SteeringProperties, RandomAngles)
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> th(0.0, pi), ph(-pi / 2, pi / 2);
    const ArrayGeometry g{3, 4, 5, 0.4, 0.6, 0.5, 1.1};
    for (int i = 0; i < 200; ++i)
    {
        const double t = th(rng), p = ph(rng);
        const CVector ax = steering_x(t, p, g.m_x, g.d1x, g.wavelength);
        const CVector ay = steering_y(t, p, g.m_y, g.d1y, g.wavelength);
        const CVector upa = steering_upa(t, p, g);
        expect_unit_modulus_leading_one(ax);
        expect_unit_modulus_leading_one(upa);
        expect_unit_modulus_leading_one(steering_bs(t, g.n_bs, g.d2z, g.wavelength));
        for (int a = 0; a < g.m_x; ++a)
            for (int b = 0; b < g.m_y; ++b)
                EXPECT_NEAR(std::abs(upa(a * g.m_y + b) - ax(a) * ay(b)), 0.0, 1e-14);
        // conjugate symmetry in the elevation
        EXPECT_TRUE(steering_x(t, -p, g.m_x, g.d1x, g.wavelength).isApprox(ax.conjugate(), 1e-14));
    }
}

TEST(LosPath, BroadsideHasZeroAngles)
{
    const LosPath p = los_path_from_positions({0, 0, 0}, {0, 0, 5});
    EXPECT_DOUBLE_EQ(p.distance, 5.0);
    EXPECT_EQ(p.theta, 0.0);
    EXPECT_EQ(p.phi, 0.0);
}

TEST(LosPath, ReferenceScenarioDistance)
{
    const LosPath p = los_path_from_positions({3, 4, 2}, {6, 9, 10});
    EXPECT_NEAR(p.distance, std::sqrt(98.0), 1e-12);
    EXPECT_NEAR(p.distance, 9.899, 5e-4);
    EXPECT_NEAR(p.theta, std::atan2(5.0, 3.0), 1e-12);
    EXPECT_NEAR(p.phi, std::acos(8.0 / std::sqrt(98.0)), 1e-12);
}

TEST(LosPath, DiagonalInXZPlane)
{
    const LosPath p = los_path_from_positions({0, 0, 0}, {1, 0, 1});
    EXPECT_NEAR(p.theta, 0.0, 1e-15);
    EXPECT_NEAR(p.phi, pi / 4, 1e-15);
    EXPECT_NEAR(p.distance, std::sqrt(2.0), 1e-15);
}

TEST(LosPath, CoincidentPointsThrow)
{
    EXPECT_THROW(los_path_from_positions({1, 2, 3}, {1, 2, 3}), GeometryError);
}

TEST(LosPath, DistanceSymmetricAndSteeringConsistent)
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    const ArrayGeometry g = ArrayGeometry::half_wavelength(4, 3, 1, 1.0);
    for (int i = 0; i < 100; ++i)
    {
        const Point3 a{u(rng), u(rng), u(rng)}, b{u(rng), u(rng), u(rng)};
        const LosPath ab = los_path_from_positions(a, b), ba = los_path_from_positions(b, a);
        EXPECT_NEAR(ab.distance, ba.distance, 1e-12);
        EXPECT_GE(ab.theta, 0.0);
        EXPECT_LE(ab.theta, pi);

        // direction cosines of the angles reproduce the geometric ones
        const Point3 d = (b - a) / ab.distance;
        EXPECT_NEAR(std::cos(ab.theta) * std::sin(ab.phi), d.x(), 1e-12);
        EXPECT_NEAR(std::sin(ab.theta) * std::sin(ab.phi), d.y(), 1e-12);

        // a channel synthesized from the geometric direction correlates to M with the steering vector
        CVector h(g.m());
        for (int x = 0; x < g.m_x; ++x)
            for (int y = 0; y < g.m_y; ++y)
                h(x * g.m_y + y) = expj(2.0 * pi * (g.d1x * x * d.x() + g.d1y * y * d.y()) / g.wavelength);
        EXPECT_NEAR(std::abs(steering_upa(ab.theta, ab.phi, g).dot(h)), g.m(), 1e-10);
    }
}

TEST(Angles, DirectionCosineRoundTrip)
{
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> th(0.0, pi), ph(-pi / 2, pi / 2);
    for (int i = 0; i < 200; ++i)
    {
        const double t = th(rng), p = ph(rng);
        const Angles a = angles_from_direction_cosines(std::cos(t) * std::sin(p), std::sin(t) * std::sin(p));
        EXPECT_NEAR(std::cos(a.theta) * std::sin(a.phi), std::cos(t) * std::sin(p), 1e-12);
        EXPECT_NEAR(std::sin(a.theta) * std::sin(a.phi), std::sin(t) * std::sin(p), 1e-12);
        EXPECT_GE(a.theta, 0.0);
        EXPECT_LE(a.theta, pi);
    }
}

TEST(ZAxisAngle, Cases)
{
    EXPECT_NEAR(z_axis_angle({0, 0, 0}, {0, 0, 1}), 0.0, 1e-15);
    EXPECT_NEAR(z_axis_angle({0, 0, 0}, {1, 0, 0}), pi / 2, 1e-15);
    EXPECT_NEAR(z_axis_angle({0, 0, 1}, {0, 0, 0}), pi, 1e-15);
}
