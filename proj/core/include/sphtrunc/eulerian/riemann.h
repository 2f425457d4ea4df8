#pragma once

#include "sphtrunc/types.h"

namespace sphtrunc
{
/// One side of a pairwise Riemann problem, projected on the interface axis.
struct InterfaceState
{
    double rho = 1.0;
    double u = 0.0; ///< velocity component along the axis pointing from left to right
    double p = 1.0;
    double c = 1.0;
    double E = 0.0; ///< total energy density (compressible only)
};

/// Where x/t = 0 falls in the wave fan: supersonic left/right or one of the star regions.
enum class StarRegion
{
    Left,
    LeftStar,
    RightStar,
    Right
};

struct RiemannStar
{
    double u_star = 0.0;
    double p_star = 0.0;
    double rho_star_l = 0.0;
    double rho_star_r = 0.0;
    double E_star_l = 0.0;
    double E_star_r = 0.0;
    double s_l = 0.0;
    double s_r = 0.0;
    double s_star = 0.0; ///< unlimited middle wave speed
    double beta = 0.0;   ///< dissipation limiter in [0, 1]
    StarRegion region = StarRegion::LeftStar;
    /// Both sides of the unlimited star-pressure identity evaluated at s_star. They agree up to
    /// round-off for any admissible pair.
    double p_star_left_expr = 0.0;
    double p_star_right_expr = 0.0;
};

/// beta = min(eta max((u_l - u_r) / c_bar, 0), 1).
double dissipation_limiter(double u_l, double u_r, double c_bar, double eta);

/**
 * HLLC star state with the low-dissipation limiter (eta = 1 by default).
 *
 * Wave speeds S_l = u_l - c_l and S_r = u_r + c_r. Star densities and energies follow the
 * unlimited middle wave S*; the limited u*, p* enter the flux. The flux side is chosen at x/t = 0:
 * the left state if S_l > 0, the right state if S_r < 0, otherwise the star state on the side of S*.
 * S_l >= S_r is resolved by the supersonic branches; S_l > 0 > S_r has no upwind side and throws
 * SolverError.
 */
RiemannStar hllc_star(const InterfaceState &left, const InterfaceState &right, double eta = 1.0);

/// Linearised (acoustic) solver with limiter eta = 15 by default. Star densities are left to the
/// caller (equation of state); the fields hold the mean density.
RiemannStar linearized_star(const InterfaceState &left, const InterfaceState &right, double eta = 15.0);

/// Star velocity vector: u* along the axis plus the mean tangential velocity of both sides.
template <int Dim>
Vec<Dim> star_velocity(const Vec<Dim> &v_l, const Vec<Dim> &v_r, const Vec<Dim> &axis, double u_l, double u_r,
                       double u_star)
{
    return u_star * axis + 0.5 * (v_l + v_r) - 0.5 * (u_l + u_r) * axis;
}
} // namespace sphtrunc
