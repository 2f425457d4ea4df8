#include "sphtrunc/eulerian/riemann.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sphtrunc
{
double dissipation_limiter(double u_l, double u_r, double c_bar, double eta)
{
    return std::min(eta * std::max((u_l - u_r) / c_bar, 0.0), 1.0);
}

RiemannStar hllc_star(const InterfaceState &l, const InterfaceState &r, double eta)
{
    RiemannStar s;
    s.s_l = l.u - l.c;
    s.s_r = r.u + r.c;
    if (s.s_l > 0.0 && s.s_r < 0.0)
    {
        std::ostringstream msg;
        msg << "HLLC waves point away from the interface on both sides (S_l = " << s.s_l << ", S_r = " << s.s_r
            << "; left rho " << l.rho << " u " << l.u << " p " << l.p << " c " << l.c << ", right rho " << r.rho
            << " u " << r.u << " p " << r.p << " c " << r.c << ")";
        throw SolverError(msg.str());
    }
    const double wl = l.rho * (l.u - s.s_l); // rho_l c_l
    const double wr = r.rho * (s.s_r - r.u); // rho_r c_r
    // Written as u_l plus a jump term so that identical states return their own values exactly.
    s.s_star = l.u + (wr * (r.u - l.u) + l.p - r.p) / (wr + wl);
    s.p_star_left_expr = l.p + wl * (l.u - s.s_star);
    s.p_star_right_expr = r.p + wr * (s.s_star - r.u);

    const double c_bar = 0.5 * (l.c + r.c);
    s.beta = dissipation_limiter(l.u, r.u, c_bar, eta);
    const double zl = l.rho * l.c;
    const double zr = r.rho * r.c;
    s.u_star = l.u + (zr * (r.u - l.u) + (l.p - r.p) * s.beta * s.beta) / (zl + zr);
    s.p_star = 0.5 * (l.p + r.p) + 0.5 * s.beta * (zr * (s.u_star - r.u) + zl * (l.u - s.u_star));

    // Intermediate states follow the unlimited wave structure (u* = S*); the limiter acts on the flux only.
    const double p_hllc = s.p_star_left_expr;
    const auto star_density = [&](const InterfaceState &k, double sk) {
        const double denom = sk - s.s_star;
        return denom != 0.0 ? k.rho * ((sk - k.u) / denom) : k.rho;
    };
    const auto star_energy = [&](const InterfaceState &k, double sk) {
        const double denom = sk - s.s_star;
        return denom != 0.0 ? k.E * ((sk - k.u) / denom) + (p_hllc * s.s_star - k.p * k.u) / denom : k.E;
    };
    s.rho_star_l = star_density(l, s.s_l);
    s.rho_star_r = star_density(r, s.s_r);
    s.E_star_l = star_energy(l, s.s_l);
    s.E_star_r = star_energy(r, s.s_r);

    if (s.s_l > 0.0)
        s.region = StarRegion::Left;
    else if (s.s_r < 0.0)
        s.region = StarRegion::Right;
    else
        s.region = s.s_star >= 0.0 ? StarRegion::LeftStar : StarRegion::RightStar;
    return s;
}

RiemannStar linearized_star(const InterfaceState &l, const InterfaceState &r, double eta)
{
    RiemannStar s;
    const double rho_bar = 0.5 * (l.rho + r.rho);
    const double c_bar = 0.5 * (l.c + r.c);
    s.beta = dissipation_limiter(l.u, r.u, c_bar, eta);
    s.u_star = 0.5 * (l.u + r.u) + 0.5 * s.beta * s.beta * (l.p - r.p) / (rho_bar * c_bar);
    s.p_star = 0.5 * (l.p + r.p) + 0.5 * s.beta * rho_bar * c_bar * (l.u - r.u);
    s.s_l = l.u - l.c;
    s.s_r = r.u + r.c;
    s.s_star = s.u_star;
    s.rho_star_l = rho_bar;
    s.rho_star_r = rho_bar;
    s.region = s.u_star >= 0.0 ? StarRegion::LeftStar : StarRegion::RightStar;
    return s;
}
} // namespace sphtrunc
