#pragma once

#include "sphtrunc/eulerian/eos.h"
#include "sphtrunc/geometry.h"

#include <array>
#include <functional>
#include <span>
#include <string>

namespace sphtrunc
{
template <int Dim>
struct PrimitiveState
{
    EIGEN_MAKE_ALIGNED_OPERATOR_NEW
    double rho = 1.0;
    Vec<Dim> v = Vec<Dim>::Zero();
    double p = 1.0;
};

/// Per-particle fluid fields. Ghost particles occupy the tail of every array.
template <int Dim>
struct FluidFields
{
    std::vector<double> vol;
    std::vector<double> rho;
    PointArray<Dim> v;
    std::vector<double> p;
    std::vector<double> c;
    std::vector<double> E; ///< total energy density; kinetic only in weakly compressible mode

    std::size_t size() const { return rho.size(); }
    void resize(std::size_t n);
};

enum class SideKind
{
    Periodic,
    Wall,         ///< mirror; no_slip sets the tangential ghost velocity to the wall velocity
    ZeroGradient, ///< copy of the nearest interior particle
    Inflow,       ///< fixed state
    DmrBottom,    ///< fixed state for x < split_x, reflective wall beyond
    DmrTop        ///< moving oblique shock: post-shock state behind the analytic shock foot
};

SideKind parse_side_kind(std::string_view text);

template <int Dim>
struct SideCondition
{
    EIGEN_MAKE_ALIGNED_OPERATOR_NEW
    SideKind kind = SideKind::Wall;
    bool no_slip = false;
    Vec<Dim> wall_velocity = Vec<Dim>::Zero();
    PrimitiveState<Dim> fixed{};   ///< inflow state, or post-shock state for the DMR sides
    PrimitiveState<Dim> ambient{}; ///< pre-shock state for the DMR top side
    double split_x = 1.0 / 6.0;    ///< shock foot at t = 0 on the bottom wall
    double shock_speed = 10.0;     ///< normal shock speed (DMR top)
    double shock_angle_deg = 60.0; ///< inclination to the x axis (DMR top)
};

/// Ghost update rule, fixed at set-up time.
template <int Dim>
struct GhostRule
{
    EIGEN_MAKE_ALIGNED_OPERATOR_NEW
    enum class Kind
    {
        Mirror,
        Fixed,
        MovingShock
    } kind = Kind::Mirror;
    Index source = 0;                   ///< real particle copied by Mirror
    std::array<Vec<Dim>, Dim> normals{}; ///< directions whose velocity component is reflected
    int normal_count = 0;
    bool no_slip = false;
    Vec<Dim> wall_velocity = Vec<Dim>::Zero();
    PrimitiveState<Dim> fixed{};
    PrimitiveState<Dim> ambient{};
    double split_x = 0.0;
    double shock_speed = 0.0;
    double shock_angle_deg = 60.0;
    int tag = 0; ///< body tag for force accumulation (0: none)
};

template <int Dim>
struct GhostSet
{
    PointArray<Dim> positions;
    std::vector<GhostRule<Dim>, Eigen::aligned_allocator<GhostRule<Dim>>> rules;
    std::size_t size() const { return positions.size(); }
};

/// Axis-aligned box filled by lattice_fill order, with one condition per side in the order
/// x-low, x-high, y-low, y-high[, z-low, z-high]. Either all sides are periodic or none.
template <int Dim>
struct RectangleDomain
{
    EIGEN_MAKE_ALIGNED_OPERATOR_NEW
    Vec<Dim> lower = Vec<Dim>::Zero();
    Vec<Dim> upper = Vec<Dim>::Ones();
    double dp = 0.1;
    std::array<SideCondition<Dim>, 2 * Dim> sides{};

    bool periodic() const;
    void validate() const;
};

/// Ghost lattice of the given number of layers around a rectangular lattice of real particles.
template <int Dim>
GhostSet<Dim> build_rectangle_ghosts(const RectangleDomain<Dim> &domain, int layers);

/// Ghosts on the lattice outside a curved shape within width of its surface, mirrored through
/// the surface. The real particle nearest to the mirror point is the source. wall_velocity gives
/// the wall velocity at the surface foot point.
GhostSet<2> build_shape_ghosts(const Shape &shape, const PointArray<2> &real_positions, double dp, double width,
                               const std::function<Vec2(const Vec2 &)> &wall_velocity, int tag = 0);

/// Ghosts for a stationary no-slip obstacle with fluid outside it: the candidates (normally the
/// fluid lattice) that lie inside the shape within width of its surface, mirrored outward.
GhostSet<2> build_obstacle_ghosts(const Shape &shape, const PointArray<2> &candidates,
                                  const PointArray<2> &real_positions, double width, int tag = 0);

/// Post-shock state of the Mach 10 double-Mach-reflection benchmark.
PrimitiveState<2> dmr_post_shock();
PrimitiveState<2> dmr_pre_shock();
/// Shock foot on the line at height y at time t: split_x + y / tan(angle) + speed t / sin(angle).
double dmr_shock_x(double y, double t, double split_x = 1.0 / 6.0, double speed = 10.0, double angle_deg = 60.0);

/// Fills the ghost tail of fields (indices n_real ...) from the real particles at time t.
template <int Dim>
void apply_boundaries(FluidFields<Dim> &fields, std::size_t n_real, const GhostSet<Dim> &ghosts, double t,
                      const EosParams &eos);
} // namespace sphtrunc
