#pragma once

#include "sphtrunc/correction.h"
#include "sphtrunc/eulerian/boundary.h"
#include "sphtrunc/eulerian/eos.h"
#include "sphtrunc/eulerian/riemann.h"
#include "sphtrunc/kernel.h"
#include "sphtrunc/neighbor.h"

#include <map>
#include <optional>

namespace sphtrunc
{
enum class RiemannSolverKind
{
    Hllc,      ///< compressible, ideal gas
    Linearised ///< weakly compressible
};

struct FluidConfig
{
    KernelFamily kernel = KernelFamily::WendlandStandard;
    double h_ratio = 1.3;
    double dp = 0.01;
    bool correction = true;
    RiemannSolverKind solver = RiemannSolverKind::Hllc;
    EosParams eos{};
    double limiter_eta = -1.0; ///< negative selects the default (1 for HLLC, 15 for linearised)
    double viscosity = 0.0;    ///< dynamic viscosity of the explicit shear term
    double cfl = 0.5;
    int workers = 1;

    double eta() const;
    void validate() const;
};

/// Per-particle time derivatives of density, momentum density and total energy density.
template <int Dim>
struct FluidRates
{
    std::vector<double> rho;
    PointArray<Dim> mom;
    std::vector<double> E;
    void assign(std::size_t n);
};

struct ConservationTotals
{
    double mass = 0.0;
    std::vector<double> momentum;
    double energy = 0.0;
    double momentum_scale = 0.0; ///< sum of vol rho |v|, the denominator for relative momentum drift
};

/**
 * Eulerian SPH on stationary particles with pairwise Riemann fluxes.
 *
 * Particle i exchanges with neighbor j the flux of the Riemann problem solved on the axis
 * n = (x_j - x_i) / r with i on the left. Fluxes use the corrected kernel gradient
 * ((B_i + B_j) / 2) grad W_ij and enter antisymmetrically, so the interior update conserves
 * mass, momentum and energy to round-off. Ghost particles (tail of the arrays) are refreshed
 * from the boundary rules before every right-hand-side evaluation.
 */
template <int Dim>
class EulerianSolver
{
  public:
    EulerianSolver(const FluidConfig &config, PointArray<Dim> positions, GhostSet<Dim> ghosts,
                   std::optional<PeriodicBox<Dim>> periodic = std::nullopt);

    /// Sets primitive variables of the real particles; ghosts follow from the boundary rules.
    void set_state(std::span<const double> rho, const PointArray<Dim> &velocity, std::span<const double> pressure);

    const FluidConfig &config() const { return config_; }
    const Kernel &kernel() const { return kernel_; }
    std::size_t real_count() const { return n_real_; }
    std::size_t ghost_count() const { return ghosts_.size(); }
    const PointArray<Dim> &positions() const { return positions_; }
    const FluidFields<Dim> &fields() const { return fields_; }
    const NeighborList<Dim> &neighbors() const { return neighbors_; }
    const CorrectionField<Dim> &corrections() const { return corrections_; }
    double time() const { return time_; }
    std::size_t steps() const { return steps_; }

    /// dt = cfl h / max_i (c_i + |v_i|) over real particles.
    double compute_dt() const;
    /// Refreshes ghosts at the current time and evaluates the right-hand side.
    void rhs(FluidRates<Dim> &rates);
    /// Two-stage midpoint step.
    void step(double dt);
    /// Steps until t_end (last step shortened to land on it). Returns the number of steps taken.
    std::size_t advance_to(double t_end, const std::function<void(const EulerianSolver &)> &observer = {});

    ConservationTotals totals() const;
    /// Largest limiter value seen since construction and the count of pairs outside [0, 1].
    double max_beta() const { return max_beta_; }
    std::size_t limiter_violations() const { return limiter_violations_; }
    /// Pressure/viscous force exerted on ghosts carrying the tag during the last rhs call.
    Vec<Dim> body_force(int tag) const;
    std::size_t pair_count() const { return pairs_.size(); }

  private:
    struct Pair
    {
        EIGEN_MAKE_ALIGNED_OPERATOR_NEW
        Index i;
        Index j;
        bool ghost;     ///< j is a ghost: only i is updated
        Vec<Dim> grad;  ///< corrected kernel gradient for (i, j)
        Vec<Dim> axis;  ///< (x_j - x_i) / r
        double r;
        double dW;      ///< uncorrected dW/dr, viscous term
    };

    void refresh_derived();
    void apply_ghosts(double t);
    /// Flux of conserved quantities through the pair, dotted with the kernel gradient.
    void pair_flux(const Pair &pair, double &mass, Vec<Dim> &mom, double &energy);
    void check_state() const;

    FluidConfig config_;
    Kernel kernel_;
    std::size_t n_real_;
    PointArray<Dim> positions_;
    GhostSet<Dim> ghosts_;
    std::optional<PeriodicBox<Dim>> periodic_;
    NeighborList<Dim> neighbors_;
    CorrectionField<Dim> corrections_;
    std::vector<Pair, Eigen::aligned_allocator<Pair>> pairs_;
    std::vector<std::size_t> pair_offsets_; ///< CSR over pairs_ when workers > 1 (one-sided pairs)
    FluidFields<Dim> fields_;
    std::vector<double> rho_;    ///< conserved: density (real particles)
    PointArray<Dim> mom_;        ///< conserved: momentum density
    std::vector<double> energy_; ///< conserved: total energy density
    double time_ = 0.0;
    std::size_t steps_ = 0;
    double max_beta_ = 0.0;
    std::size_t limiter_violations_ = 0;
    std::map<int, Vec<Dim>, std::less<int>, Eigen::aligned_allocator<std::pair<const int, Vec<Dim>>>> forces_;
};
} // namespace sphtrunc
