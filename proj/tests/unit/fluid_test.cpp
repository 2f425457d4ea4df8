#include "sphtrunc/eulerian/fluid.h"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace sphtrunc;

namespace
{
constexpr double two_pi = 2.0 * std::numbers::pi;

FluidConfig gas_config(double dp)
{
    FluidConfig c;
    c.dp = dp;
    c.eos = EosParams::ideal_gas();
    c.solver = RiemannSolverKind::Hllc;
    return c;
}

struct SmoothState
{
    std::vector<double> rho, p;
    PointArray<2> v;
};

SmoothState smooth_state(const PointArray<2> &x)
{
    SmoothState s;
    for (const auto &q : x)
    {
        s.rho.push_back(1.0 + 0.1 * std::sin(two_pi * q.x()) * std::cos(two_pi * q.y()));
        s.v.emplace_back(0.2 * std::sin(two_pi * q.y()), 0.1 * std::cos(two_pi * q.x()));
        s.p.push_back(1.0 + 0.05 * std::cos(two_pi * (q.x() + q.y())));
    }
    return s;
}
} // namespace

TEST(Fluid, UniformPeriodicStateHasZeroRates)
{
    const double dp = 0.05;
    const auto x = lattice_fill<2>(Rectangle{Vec2::Zero(), Vec2::Ones()}, dp);
    for (auto family : {KernelFamily::WendlandStandard, KernelFamily::WendlandTruncated})
    {
        auto config = gas_config(dp);
        config.kernel = family;
        EulerianSolver<2> solver(config, x, {}, PeriodicBox<2>{Vec2::Zero(), Vec2::Ones()});
        const std::vector<double> rho(x.size(), 1.4), p(x.size(), 1.0);
        solver.set_state(rho, PointArray<2>(x.size(), Vec2(0.3, -0.2)), p);
        FluidRates<2> rates;
        solver.rhs(rates);
        for (std::size_t i = 0; i < x.size(); ++i)
        {
            EXPECT_NEAR(rates.rho[i], 0.0, 1e-11);
            EXPECT_LT(rates.mom[i].norm(), 1e-11);
            EXPECT_NEAR(rates.E[i], 0.0, 1e-10);
        }
    }
}

TEST(Fluid, PeriodicConservation)
{
    const double dp = 0.05;
    const auto x = lattice_fill<2>(Rectangle{Vec2::Zero(), Vec2::Ones()}, dp);
    const auto s = smooth_state(x);
    for (auto solver_kind : {RiemannSolverKind::Hllc, RiemannSolverKind::Linearised})
    {
        auto config = gas_config(dp);
        config.solver = solver_kind;
        if (solver_kind == RiemannSolverKind::Linearised)
        {
            config.eos = EosParams::weakly_compressible(1.0, 1.0);
            config.viscosity = 0.01;
        }
        EulerianSolver<2> solver(config, x, {}, PeriodicBox<2>{Vec2::Zero(), Vec2::Ones()});
        solver.set_state(s.rho, s.v, s.p);
        const auto before = solver.totals();
        for (int k = 0; k < 20; ++k)
            solver.step(solver.compute_dt());
        const auto after = solver.totals();
        EXPECT_NEAR(after.mass, before.mass, 1e-13 * before.mass);
        for (int d = 0; d < 2; ++d)
            EXPECT_NEAR(after.momentum[d], before.momentum[d], 1e-13 * before.momentum_scale);
        if (solver_kind == RiemannSolverKind::Hllc)
        {
            EXPECT_NEAR(after.energy, before.energy, 1e-13 * before.energy);
        }
        EXPECT_LE(solver.max_beta(), 1.0);
        EXPECT_EQ(solver.limiter_violations(), 0u);
        EXPECT_EQ(solver.steps(), 20u);
    }
}

TEST(Fluid, PressureDifferencePushesTowardLowPressure)
{
    const double dp = 0.05;
    const auto x = lattice_fill<2>(Rectangle{Vec2::Zero(), Vec2::Ones()}, dp);
    EulerianSolver<2> solver(gas_config(dp), x, {}, PeriodicBox<2>{Vec2::Zero(), Vec2::Ones()});
    std::vector<double> rho(x.size(), 1.0), p(x.size(), 1.0);
    const std::size_t i = 10 * 20 + 10;
    p[i] = 2.0;
    solver.set_state(rho, PointArray<2>(x.size(), Vec2::Zero()), p);
    FluidRates<2> rates;
    solver.rhs(rates);
    // The neighbor on the +x side is accelerated along +x.
    const std::size_t right = 11 * 20 + 10;
    EXPECT_GT(rates.mom[right].x(), 0.0);
    EXPECT_NEAR(rates.mom[right].y(), 0.0, 1e-12);
    EXPECT_LT(rates.mom[i].norm(), 1e-12);
}

TEST(Fluid, WallGhostsMirrorVelocity)
{
    const double dp = 0.1;
    RectangleDomain<2> domain;
    domain.dp = dp;
    const auto ghosts = build_rectangle_ghosts(domain, 3);
    ASSERT_GT(ghosts.size(), 0u);
    const auto x = lattice_fill<2>(Rectangle{Vec2::Zero(), Vec2::Ones()}, dp);
    EulerianSolver<2> solver(gas_config(dp), x, ghosts);
    const std::vector<double> rho(x.size(), 1.0), p(x.size(), 1.0);
    solver.set_state(rho, PointArray<2>(x.size(), Vec2(0.3, 0.2)), p);
    FluidRates<2> rates;
    solver.rhs(rates);
    const auto &f = solver.fields();
    for (std::size_t g = 0; g < ghosts.size(); ++g)
    {
        const Vec2 &q = ghosts.positions[g];
        const Vec2 &v = f.v[x.size() + g];
        const bool outside_x = q.x() < 0.0 || q.x() > 1.0;
        const bool outside_y = q.y() < 0.0 || q.y() > 1.0;
        EXPECT_DOUBLE_EQ(v.x(), outside_x ? -0.3 : 0.3);
        EXPECT_DOUBLE_EQ(v.y(), outside_y ? -0.2 : 0.2);
        EXPECT_DOUBLE_EQ(f.p[x.size() + g], 1.0);
    }
}

TEST(Fluid, InflowGhostsHoldFixedState)
{
    const double dp = 0.1;
    RectangleDomain<2> domain;
    domain.dp = dp;
    domain.sides[0].kind = SideKind::Inflow;
    domain.sides[0].fixed = dmr_post_shock();
    const auto ghosts = build_rectangle_ghosts(domain, 3);
    const auto x = lattice_fill<2>(Rectangle{Vec2::Zero(), Vec2::Ones()}, dp);
    EulerianSolver<2> solver(gas_config(dp), x, ghosts);
    const std::vector<double> rho(x.size(), 1.4), p(x.size(), 1.0);
    solver.set_state(rho, PointArray<2>(x.size(), Vec2::Zero()), p);
    FluidRates<2> rates;
    solver.rhs(rates);
    const auto &f = solver.fields();
    std::size_t inflow = 0;
    for (std::size_t g = 0; g < ghosts.size(); ++g)
    {
        const Vec2 &q = ghosts.positions[g];
        if (q.x() > 0.0 || q.y() < 0.0 || q.y() > 1.0)
            continue;
        ++inflow;
        EXPECT_DOUBLE_EQ(f.rho[x.size() + g], 8.0);
        EXPECT_DOUBLE_EQ(f.v[x.size() + g].x(), 7.145);
        EXPECT_DOUBLE_EQ(f.p[x.size() + g], 116.8333);
    }
    EXPECT_EQ(inflow, 30u);
}

TEST(Fluid, TimeStep)
{
    const double dp = 0.01;
    const auto x = lattice_fill<2>(Rectangle{Vec2::Zero(), Vec2::Ones()}, 0.1);
    auto config = gas_config(dp);
    config.h_ratio = 1.0;
    EulerianSolver<2> solver(config, x, {}, PeriodicBox<2>{Vec2::Zero(), Vec2::Ones()});
    solver.set_state(std::vector<double>(x.size(), 1.4), PointArray<2>(x.size(), Vec2::Zero()),
                     std::vector<double>(x.size(), 1.0));
    EXPECT_NEAR(solver.compute_dt(), 0.5 * 0.01 / 1.0, 1e-15);

    auto wc = gas_config(1.0 / 129.0);
    wc.solver = RiemannSolverKind::Linearised;
    wc.eos = EosParams::weakly_compressible(1.0, 1.0);
    wc.cfl = 0.6;
    const auto xw = lattice_fill<2>(Rectangle{Vec2::Zero(), Vec2::Ones()}, 0.1);
    EulerianSolver<2> ws(wc, xw, {}, PeriodicBox<2>{Vec2::Zero(), Vec2::Ones()});
    ws.set_state(std::vector<double>(xw.size(), 1.0), PointArray<2>(xw.size(), Vec2::Zero()),
                 std::vector<double>(xw.size(), 0.0));
    EXPECT_NEAR(ws.compute_dt(), 0.6 * 1.3 / 129.0 / 10.0, 1e-15);
}

TEST(Fluid, WorkerCountDoesNotChangeResult)
{
    const double dp = 0.05;
    const auto x = lattice_fill<2>(Rectangle{Vec2::Zero(), Vec2::Ones()}, dp);
    const auto s = smooth_state(x);
    std::vector<std::vector<double>> densities;
    for (int workers : {1, 3})
    {
        auto config = gas_config(dp);
        config.workers = workers;
        EulerianSolver<2> solver(config, x, {}, PeriodicBox<2>{Vec2::Zero(), Vec2::Ones()});
        solver.set_state(s.rho, s.v, s.p);
        for (int k = 0; k < 5; ++k)
            solver.step(solver.compute_dt());
        densities.emplace_back(solver.fields().rho.begin(), solver.fields().rho.begin() + x.size());
    }
    for (std::size_t i = 0; i < x.size(); ++i)
        EXPECT_NEAR(densities[0][i], densities[1][i], 1e-13);
}

TEST(Fluid, InvalidConfig)
{
    FluidConfig c;
    c.cfl = 0.0;
    EXPECT_THROW(c.validate(), ConfigError);
    c = {};
    c.dp = -1.0;
    EXPECT_THROW(c.validate(), ConfigError);
    EXPECT_DOUBLE_EQ(FluidConfig{}.eta(), 1.0);
    c = {};
    c.solver = RiemannSolverKind::Linearised;
    EXPECT_DOUBLE_EQ(c.eta(), 15.0);
}
