#pragma once

#include "sphtrunc/correction.h"
#include "sphtrunc/kernel.h"
#include "sphtrunc/neighbor.h"

#include <functional>
#include <vector>

namespace sphtrunc
{
struct LameParameters
{
    double lambda = 0.0;
    double shear = 0.0;
};

/// Isotropic elasticity: lambda = E nu / ((1 + nu)(1 - 2 nu)), G = E / (2 (1 + nu)).
LameParameters lame_params(double youngs, double poisson);

struct Material
{
    double rho0 = 1100.0;
    double youngs = 17.0e6;
    double poisson = 0.45;

    void validate() const;
    LameParameters lame() const { return lame_params(youngs, poisson); }
    /// Dilatational wave speed sqrt((lambda + 2G) / rho0).
    double sound_speed() const;
};

template <int Dim>
Mat<Dim> green_lagrange_strain(const Mat<Dim> &F)
{
    return 0.5 * (F.transpose() * F - Mat<Dim>::Identity());
}

/// St. Venant-Kirchhoff second Piola-Kirchhoff stress.
template <int Dim>
Mat<Dim> pk2_stress(const Mat<Dim> &F, const LameParameters &lame)
{
    const Mat<Dim> strain = green_lagrange_strain<Dim>(F);
    return lame.lambda * strain.trace() * Mat<Dim>::Identity() + 2.0 * lame.shear * strain;
}

/// sqrt(3/2 dev(sigma):dev(sigma)) of a Cauchy stress.
template <int Dim>
double von_mises(const Mat<Dim> &cauchy)
{
    const Mat<Dim> dev = cauchy - (cauchy.trace() / Dim) * Mat<Dim>::Identity();
    return std::sqrt(1.5 * dev.cwiseProduct(dev).sum());
}

/// Von Mises stress of the Cauchy stress J^-1 F S F^T.
template <int Dim>
double von_mises(const Mat<Dim> &F, const Mat<Dim> &S)
{
    return von_mises<Dim>(Mat<Dim>((F * S * F.transpose()) / F.determinant()));
}

struct SolidConfig
{
    KernelFamily kernel = KernelFamily::WendlandStandard;
    double h_ratio = 1.15;
    double dp = 0.1;
    bool correction = true;
    Material material{};
    double cfl = 0.6;
    int workers = 1;
    /// Opt-in Kelvin-Voigt numerical damping: adds damping rho0 c_s h dE/dt to S. Zero disables it.
    double damping = 0.0;

    void validate() const;
};

/**
 * Total Lagrangian SPH for elastic solids.
 *
 * All kernel sums run over the reference configuration: neighbors, gradients and correction
 * matrices are built once. The deformation gradient is integrated from
 * dF_i/dt = [sum_j V_j (v_j - v_i) (x) grad W_ij] B_i and the momentum equation is
 * rho0 dv_i/dt = sum_j (P_i B_i^T + P_j B_j^T) grad W_ij V_j with P = F S.
 * Fixed particles keep zero velocity but carry a deformation gradient like any other.
 */
template <int Dim>
class TotalLagrangianSolver
{
  public:
    TotalLagrangianSolver(const SolidConfig &config, PointArray<Dim> reference, std::vector<bool> fixed);

    /// Fixed particles are forced to zero velocity.
    void set_velocity(const PointArray<Dim> &velocity);
    /// Overrides the deformation gradient (tests and restarts from a deformed state).
    void set_deformation(const MatrixArray<Dim> &F);

    const SolidConfig &config() const { return config_; }
    const Kernel &kernel() const { return kernel_; }
    std::size_t size() const { return reference_.size(); }
    const PointArray<Dim> &reference() const { return reference_; }
    const PointArray<Dim> &positions() const { return positions_; }
    const PointArray<Dim> &velocities() const { return velocity_; }
    const MatrixArray<Dim> &deformation() const { return F_; }
    /// Elastic second Piola-Kirchhoff stress (without the damping part).
    const MatrixArray<Dim> &stress() const { return S_; }
    const std::vector<bool> &fixed() const { return fixed_; }
    const NeighborList<Dim> &neighbors() const { return neighbors_; }
    const CorrectionField<Dim> &corrections() const { return corrections_; }
    double volume() const { return volume_; }
    double time() const { return time_; }
    std::size_t steps() const { return steps_; }

    Mat<Dim> deformation_rate(std::size_t i) const;
    /// Accelerations from the current stresses.
    void accelerations(PointArray<Dim> &out) const;

    /// dt = cfl h / (c_s + max |v|).
    double compute_dt() const;
    /// Kick-drift-kick step.
    void step(double dt);
    std::size_t advance_to(double t_end, const std::function<void(const TotalLagrangianSolver &)> &observer = {});

    Vec<Dim> momentum() const;
    double kinetic_energy() const;
    /// sum_i V_i S_i : E_i / 2
    double strain_energy() const;
    std::vector<double> von_mises_field() const;

  private:
    void update_stress();
    void check_state() const;

    SolidConfig config_;
    Kernel kernel_;
    LameParameters lame_;
    double volume_;
    PointArray<Dim> reference_;
    std::vector<bool> fixed_;
    NeighborList<Dim> neighbors_;
    CorrectionField<Dim> corrections_;
    PointArray<Dim> grad_; ///< reference kernel gradient per neighbor entry
    PointArray<Dim> positions_;
    PointArray<Dim> velocity_;
    PointArray<Dim> accel_;
    MatrixArray<Dim> F_;
    MatrixArray<Dim> S_;
    MatrixArray<Dim> PB_; ///< F S B^T
    MatrixArray<Dim> rate_;
    double time_ = 0.0;
    std::size_t steps_ = 0;
};

enum class ColumnCase
{
    Bend, ///< axis along z, uniform transverse initial velocity
    Twist ///< axis along y, sinusoidal angular velocity about the axis
};

/// Square-section column with a clamped band of particles below the base plane.
struct ColumnSetup
{
    PointArray<3> positions;
    std::vector<bool> fixed;
    int axis = 2;                ///< coordinate index of the column axis
    std::size_t tip_index = 0;   ///< top-layer particle closest to the axis
};

struct ColumnGeometry
{
    double width = 1.0;
    double length = 6.0;
};

/// Lattice fill of the column plus clamp_layers fixed layers below the base.
ColumnSetup make_column(ColumnCase kind, double dp, int clamp_layers, const ColumnGeometry &geometry = {});

struct ColumnVelocity
{
    double bend_speed = 10.0;       ///< along (sqrt(3)/2, 1/2, 0)
    double twist_rate = 105.0;      ///< angular speed at the free end, rad/s
};

/// Bend: uniform v0. Twist: v = omega(y) x (x - axis point), omega = (0, rate sin(pi y / 2L), 0).
PointArray<3> init_case_velocity(ColumnCase kind, const ColumnSetup &setup, const ColumnGeometry &geometry = {},
                                 const ColumnVelocity &velocity = {});
} // namespace sphtrunc
