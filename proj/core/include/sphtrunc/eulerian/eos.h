#pragma once

#include "sphtrunc/types.h"

namespace sphtrunc
{
enum class EosKind
{
    IdealGas,
    WeaklyCompressible
};

struct EosParams
{
    EosKind kind = EosKind::IdealGas;
    double gamma = 1.4;       ///< heat capacity ratio (ideal gas)
    double rho0 = 1.0;        ///< reference density (weakly compressible)
    double sound_speed = 1.0; ///< artificial sound speed (weakly compressible)

    static EosParams ideal_gas(double gamma = 1.4);
    /// Artificial sound speed 10 * u_max keeps density variations near 1%.
    static EosParams weakly_compressible(double rho0, double u_max);

    void validate() const;
};

struct PressureSound
{
    double p;
    double c;
};

/// Pressure and sound speed from density, kinetic energy density rho |v|^2 / 2 and total energy
/// density (ignored in weakly compressible mode). Throws SolverError on negative internal energy.
PressureSound eos_eval(double rho, double kinetic, double total_energy, const EosParams &params);

/// Total energy density p / (gamma - 1) + kinetic for the ideal gas; kinetic only otherwise.
double total_energy_density(double rho, double p, double speed_sq, const EosParams &params);

/// Density that produces pressure p (weakly compressible inverse); throws for the ideal gas.
double density_from_pressure(double p, const EosParams &params);
} // namespace sphtrunc
