#include "sphtrunc/eulerian/eos.h"

#include <gtest/gtest.h>

#include <cmath>

using namespace sphtrunc;

TEST(Eos, IdealGas)
{
    const auto gas = EosParams::ideal_gas();
    const double E = total_energy_density(1.4, 1.0, 4.0, gas);
    EXPECT_DOUBLE_EQ(E, 2.5 + 0.5 * 1.4 * 4.0);
    const auto ps = eos_eval(1.4, 0.5 * 1.4 * 4.0, E, gas);
    EXPECT_NEAR(ps.p, 1.0, 1e-14);
    EXPECT_NEAR(ps.c, 1.0, 1e-14);
    EXPECT_THROW(eos_eval(1.0, 2.0, 1.0, gas), SolverError);
    EXPECT_THROW(eos_eval(0.0, 0.0, 1.0, gas), SolverError);
    EXPECT_THROW(density_from_pressure(1.0, gas), InputError);
}

TEST(Eos, WeaklyCompressible)
{
    const auto wc = EosParams::weakly_compressible(1.0, 1.0);
    EXPECT_DOUBLE_EQ(wc.sound_speed, 10.0);
    const auto ps = eos_eval(1.01, 0.0, 0.0, wc);
    EXPECT_NEAR(ps.p, 1.0, 1e-12);
    EXPECT_DOUBLE_EQ(ps.c, 10.0);
    EXPECT_NEAR(density_from_pressure(1.0, wc), 1.01, 1e-15);
    EXPECT_DOUBLE_EQ(total_energy_density(1.0, 5.0, 4.0, wc), 2.0);
}

TEST(Eos, InvalidParameters)
{
    EXPECT_THROW(EosParams::ideal_gas(1.0), ConfigError);
    EXPECT_THROW(EosParams::weakly_compressible(1.0, 0.0), ConfigError);
    EXPECT_THROW(EosParams::weakly_compressible(-1.0, 1.0), ConfigError);
}
