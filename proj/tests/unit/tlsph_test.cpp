#include "sphtrunc/geometry.h"
#include "sphtrunc/tlsph.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace sphtrunc;

namespace
{
Mat3 rotation(double angle)
{
    return Eigen::AngleAxisd(angle, Vec3(1.0, 2.0, 2.0).normalized()).toRotationMatrix();
}

SolidConfig cube_config(double dp)
{
    SolidConfig c;
    c.dp = dp;
    return c;
}
} // namespace

TEST(Solid, LameParameters)
{
    const auto lame = lame_params(17.0e6, 0.45);
    EXPECT_NEAR(lame.shear, 17.0e6 / 2.9, 1e-6);
    EXPECT_NEAR(lame.lambda, 17.0e6 * 0.45 / (1.45 * 0.1), 1e-4);
    const Material m;
    EXPECT_NEAR(m.sound_speed(), std::sqrt((lame.lambda + 2.0 * lame.shear) / 1100.0), 1e-9);
    EXPECT_THROW((Material{1100.0, 17.0e6, 0.5}.validate()), ConfigError);
}

TEST(Solid, StressVanishesForRigidMotion)
{
    const auto lame = lame_params(17.0e6, 0.45);
    EXPECT_EQ(pk2_stress<3>(Mat3::Identity(), lame), Mat3::Zero());
    EXPECT_LT(pk2_stress<3>(rotation(0.7), lame).norm(), 1e-6);
    EXPECT_LT(green_lagrange_strain<3>(rotation(-1.3)).norm(), 1e-14);
}

TEST(Solid, VonMisesOfSimpleStates)
{
    Mat3 uniaxial = Mat3::Zero();
    uniaxial(0, 0) = 5.0;
    EXPECT_NEAR(von_mises<3>(uniaxial), 5.0, 1e-14);
    EXPECT_NEAR(von_mises<3>(Mat3(Mat3::Identity() * 7.0)), 0.0, 1e-14);
    Mat3 shear = Mat3::Zero();
    shear(0, 1) = shear(1, 0) = 2.0;
    EXPECT_NEAR(von_mises<3>(shear), std::sqrt(3.0) * 2.0, 1e-14);
    // The stress measure is frame indifferent.
    const Mat3 R = rotation(0.4);
    EXPECT_NEAR(von_mises<3>(Mat3(R * uniaxial * R.transpose())), 5.0, 1e-13);
}

TEST(Solid, UniformTranslationStaysUnstrained)
{
    const double dp = 0.1;
    const auto x = lattice_fill<3>(Box3{Vec3::Zero(), Vec3(0.5, 0.5, 0.5)}, dp);
    TotalLagrangianSolver<3> solver(cube_config(dp), x, std::vector<bool>(x.size(), false));
    solver.set_velocity(PointArray<3>(x.size(), Vec3(1.0, -2.0, 0.5)));
    for (int k = 0; k < 10; ++k)
        solver.step(solver.compute_dt());
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        EXPECT_LT((solver.deformation()[i] - Mat3::Identity()).norm(), 1e-12);
        EXPECT_LT((solver.velocities()[i] - Vec3(1.0, -2.0, 0.5)).norm(), 1e-9);
    }
    EXPECT_NEAR(solver.strain_energy(), 0.0, 1e-9);
}

TEST(Solid, FreeBodyConservesMomentum)
{
    const double dp = 0.1;
    const auto x = lattice_fill<3>(Box3{Vec3::Zero(), Vec3(0.5, 0.5, 0.8)}, dp);
    for (auto family : {KernelFamily::WendlandStandard, KernelFamily::WendlandTruncated})
    {
        auto config = cube_config(dp);
        config.kernel = family;
        TotalLagrangianSolver<3> solver(config, x, std::vector<bool>(x.size(), false));
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        PointArray<3> v;
        for (std::size_t i = 0; i < x.size(); ++i)
            v.emplace_back(u(rng), u(rng), u(rng));
        solver.set_velocity(v);
        const Vec3 before = solver.momentum();
        double scale = 0.0;
        for (const auto &w : v)
            scale += config.material.rho0 * solver.volume() * w.norm();
        for (int k = 0; k < 50; ++k)
            solver.step(solver.compute_dt());
        EXPECT_LT((solver.momentum() - before).norm(), 1e-12 * scale) << to_string(family);
        EXPECT_GT(solver.strain_energy(), 0.0);
    }
}

TEST(Solid, FixedParticlesDoNotMove)
{
    const double dp = 0.1;
    const auto x = lattice_fill<3>(Box3{Vec3::Zero(), Vec3(0.5, 0.5, 0.5)}, dp);
    std::vector<bool> fixed(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        fixed[i] = x[i].z() < 0.2;
    TotalLagrangianSolver<3> solver(cube_config(dp), x, fixed);
    solver.set_velocity(PointArray<3>(x.size(), Vec3(1.0, 0.0, 0.0)));
    for (int k = 0; k < 5; ++k)
        solver.step(solver.compute_dt());
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        if (fixed[i])
        {
            EXPECT_EQ(solver.positions()[i], x[i]);
        }
    }
}

TEST(Solid, TimeStep)
{
    const double dp = 0.1;
    const auto x = lattice_fill<3>(Box3{Vec3::Zero(), Vec3(0.5, 0.5, 0.5)}, dp);
    TotalLagrangianSolver<3> solver(cube_config(dp), x, std::vector<bool>(x.size(), false));
    const double c = Material{}.sound_speed();
    EXPECT_NEAR(solver.compute_dt(), 0.6 * 1.15 * dp / c, 1e-15);
    solver.set_velocity(PointArray<3>(x.size(), Vec3(3.0, 4.0, 0.0)));
    EXPECT_NEAR(solver.compute_dt(), 0.6 * 1.15 * dp / (c + 5.0), 1e-15);
}

TEST(Column, BendingSetup)
{
    const double dp = 1.0 / 6.0;
    const auto setup = make_column(ColumnCase::Bend, dp, 2);
    EXPECT_EQ(setup.axis, 2);
    EXPECT_EQ(setup.positions.size(), 6u * 6u * 38u);
    std::size_t fixed = 0;
    for (bool f : setup.fixed)
        fixed += f;
    EXPECT_EQ(fixed, 6u * 6u * 2u);
    const Vec3 &tip = setup.positions[setup.tip_index];
    EXPECT_NEAR(tip.z(), 6.0 - 0.5 * dp, 1e-12);
    const auto v = init_case_velocity(ColumnCase::Bend, setup);
    for (std::size_t i = 0; i < v.size(); ++i)
        EXPECT_LT((v[i] - (setup.fixed[i] ? Vec3::Zero() : Vec3(5.0 * std::sqrt(3.0), 5.0, 0.0))).norm(), 1e-12);
}

TEST(Column, TwistingVelocity)
{
    const double dp = 0.1;
    const auto setup = make_column(ColumnCase::Twist, dp, 3);
    EXPECT_EQ(setup.axis, 1);
    const auto v = init_case_velocity(ColumnCase::Twist, setup);
    for (std::size_t i = 0; i < v.size(); ++i)
    {
        const Vec3 &x = setup.positions[i];
        if (setup.fixed[i])
        {
            EXPECT_EQ(v[i], Vec3::Zero());
            continue;
        }
        const double omega = 105.0 * std::sin(M_PI * x.y() / 12.0);
        const Vec3 expected(omega * (x.z() - 0.5), 0.0, -omega * (x.x() - 0.5));
        EXPECT_LT((v[i] - expected).norm(), 1e-10);
    }
    EXPECT_THROW(make_column(ColumnCase::Bend, 0.0, 1), ConfigError);
}
