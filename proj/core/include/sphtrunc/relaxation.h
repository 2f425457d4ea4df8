#pragma once

#include "sphtrunc/geometry.h"
#include "sphtrunc/kernel.h"
#include "sphtrunc/neighbor.h"

#include <optional>
#include <span>

namespace sphtrunc
{
struct RelaxationConfig
{
    double p0 = 1.0;            ///< constant driving pressure
    int max_steps = 1000;
    double residual_tol = 1e-6; ///< stop when mean |a| h rho / p0 drops below this
    double step_scale = 0.05;   ///< displacement = step_scale * a * (h / sqrt(p0 / rho))^2
    KernelFamily kernel = KernelFamily::LaguerreGauss;
    double h_ratio = 1.3;       ///< h = h_ratio * dp
    double rho = 1.0;           ///< reference density held fixed during relaxation
    Shape shape = Circle{};
    double dp = 0.2;
    /// Static quadrature points filling the outside band (spacing dp / band_refinement) stand in
    /// for the missing material beyond the surface. Without them the surface layer is pushed out.
    bool exterior_band = true;
    int band_refinement = 4;

    void validate() const;
};

template <int Dim>
struct RelaxationResult
{
    PointArray<Dim> positions;
    std::vector<double> volumes;
    std::vector<double> residual_history; ///< residual before each update, step 0 first
    int steps = 0;
    bool converged = false;
    std::size_t isolated_particles = 0; ///< particles with an empty neighborhood in the last evaluation
};

/// a_i = -(2 p0 / rho) sum_j grad W_ij V_j over the listed neighbors of the first neighbors.size()
/// particles; entries beyond that only act as neighbors. Isolated particles get a zero vector and
/// are counted in *isolated when provided.
template <int Dim>
PointArray<Dim> relax_accelerations(const PointArray<Dim> &positions, std::span<const double> volumes,
                                    const Kernel &kernel, const NeighborList<Dim> &neighbors, double p0 = 1.0,
                                    double rho = 1.0, std::size_t *isolated = nullptr);

/// Dimensionless residual mean_i |a_i| h rho / p0.
template <int Dim>
double relaxation_residual(const PointArray<Dim> &accelerations, double h, double rho, double p0);

/**
 * Pseudo-time relaxation from initial positions (normally lattice_fill output).
 *
 * Each step moves particles by step_scale * a * dt*^2 with dt* = h / sqrt(p0 / rho), capping the
 * displacement at dp / 4, and projects particles that left the shape back onto its surface.
 * With a periodic box the shape is ignored and positions are wrapped instead. Throws
 * NonConvergenceError if the residual grows tenfold within 100 steps.
 */
template <int Dim>
RelaxationResult<Dim> relax(const RelaxationConfig &config, const PointArray<Dim> &initial,
                            const std::optional<PeriodicBox<Dim>> &periodic = std::nullopt);

/// Convenience: lattice_fill of config.shape at config.dp followed by relax.
template <int Dim>
RelaxationResult<Dim> relax_shape(const RelaxationConfig &config);
} // namespace sphtrunc
