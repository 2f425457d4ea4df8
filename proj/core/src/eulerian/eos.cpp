#include "sphtrunc/eulerian/eos.h"

#include <cmath>

namespace sphtrunc
{
EosParams EosParams::ideal_gas(double gamma)
{
    EosParams p;
    p.kind = EosKind::IdealGas;
    p.gamma = gamma;
    p.validate();
    return p;
}

EosParams EosParams::weakly_compressible(double rho0, double u_max)
{
    EosParams p;
    p.kind = EosKind::WeaklyCompressible;
    p.rho0 = rho0;
    p.sound_speed = 10.0 * u_max;
    p.validate();
    return p;
}

void EosParams::validate() const
{
    if (kind == EosKind::IdealGas && !(gamma > 1.0))
        throw ConfigError("ideal gas requires gamma > 1");
    if (kind == EosKind::WeaklyCompressible && (!(rho0 > 0.0) || !(sound_speed > 0.0)))
        throw ConfigError("weakly compressible EOS requires rho0 > 0 and a positive sound speed");
}

PressureSound eos_eval(double rho, double kinetic, double total_energy, const EosParams &params)
{
    if (!(rho > 0.0))
        throw SolverError("non-positive density in equation of state");
    if (params.kind == EosKind::WeaklyCompressible)
        return {params.sound_speed * params.sound_speed * (rho - params.rho0), params.sound_speed};
    const double internal = total_energy - kinetic;
    if (!(internal >= 0.0))
        throw SolverError("negative internal energy in equation of state");
    const double p = (params.gamma - 1.0) * internal;
    return {p, std::sqrt(params.gamma * p / rho)};
}

double total_energy_density(double rho, double p, double speed_sq, const EosParams &params)
{
    const double kinetic = 0.5 * rho * speed_sq;
    if (params.kind == EosKind::WeaklyCompressible)
        return kinetic;
    return p / (params.gamma - 1.0) + kinetic;
}

double density_from_pressure(double p, const EosParams &params)
{
    if (params.kind != EosKind::WeaklyCompressible)
        throw InputError("density_from_pressure is defined for the weakly compressible EOS only");
    return params.rho0 + p / (params.sound_speed * params.sound_speed);
}
} // namespace sphtrunc
