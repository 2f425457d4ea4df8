#include "sphtrunc/eulerian/boundary.h"

#include "sphtrunc/neighbor.h"

#include <cmath>
#include <limits>
#include <numbers>

namespace sphtrunc
{
template <int Dim>
void FluidFields<Dim>::resize(std::size_t n)
{
    vol.resize(n, 0.0);
    rho.resize(n, 1.0);
    v.resize(n, Vec<Dim>::Zero());
    p.resize(n, 0.0);
    c.resize(n, 1.0);
    E.resize(n, 0.0);
}

SideKind parse_side_kind(std::string_view text)
{
    if (text == "periodic")
        return SideKind::Periodic;
    if (text == "wall" || text == "slip-wall" || text == "no-slip-wall" || text == "reflective")
        return SideKind::Wall;
    if (text == "zero-gradient" || text == "outflow")
        return SideKind::ZeroGradient;
    if (text == "inflow")
        return SideKind::Inflow;
    if (text == "dmr-bottom")
        return SideKind::DmrBottom;
    if (text == "dmr-top")
        return SideKind::DmrTop;
    throw ConfigError("unknown boundary tag '" + std::string(text) + "'");
}

template <int Dim>
bool RectangleDomain<Dim>::periodic() const
{
    return sides[0].kind == SideKind::Periodic;
}

template <int Dim>
void RectangleDomain<Dim>::validate() const
{
    if (!(dp > 0.0))
        throw ConfigError("domain spacing must be positive");
    if (!((upper - lower).array() > 0.0).all())
        throw ConfigError("domain extents must be positive");
    int periodic_sides = 0;
    for (const auto &s : sides)
        periodic_sides += s.kind == SideKind::Periodic ? 1 : 0;
    if (periodic_sides != 0 && periodic_sides != 2 * Dim)
        throw ConfigError("periodic boundaries must be applied on every side or on none");
}

PrimitiveState<2> dmr_post_shock()
{
    return {8.0, Vec2(7.145, -4.125), 116.8333};
}

PrimitiveState<2> dmr_pre_shock()
{
    return {1.4, Vec2::Zero(), 1.0};
}

double dmr_shock_x(double y, double t, double split_x, double speed, double angle_deg)
{
    const double angle = angle_deg * std::numbers::pi / 180.0;
    return split_x + y / std::tan(angle) + speed * t / std::sin(angle);
}

template <int Dim>
GhostSet<Dim> build_rectangle_ghosts(const RectangleDomain<Dim> &domain, int layers)
{
    domain.validate();
    GhostSet<Dim> ghosts;
    if (domain.periodic())
        return ghosts;

    std::array<long, Dim> n{};
    for (int k = 0; k < Dim; ++k)
        n[k] = std::max(1L, static_cast<long>(std::ceil((domain.upper[k] - domain.lower[k]) / domain.dp - 1e-9)));
    std::array<long, Dim> ext{};
    long total = 1;
    for (int k = 0; k < Dim; ++k)
    {
        ext[k] = n[k] + 2 * layers;
        total *= ext[k];
    }

    for (long flat = 0; flat < total; ++flat)
    {
        std::array<long, Dim> idx{};
        long rem = flat;
        for (int k = Dim - 1; k >= 0; --k)
        {
            idx[k] = rem % ext[k] - layers;
            rem /= ext[k];
        }
        // side[k]: -1 below, +1 above, 0 inside along axis k.
        std::array<int, Dim> side{};
        bool outside = false;
        for (int k = 0; k < Dim; ++k)
        {
            side[k] = idx[k] < 0 ? -1 : (idx[k] >= n[k] ? 1 : 0);
            outside = outside || side[k] != 0;
        }
        if (!outside)
            continue;

        Vec<Dim> x;
        for (int k = 0; k < Dim; ++k)
            x[k] = domain.lower[k] + (static_cast<double>(idx[k]) + 0.5) * domain.dp;

        GhostRule<Dim> rule;
        bool fixed = false;
        std::array<long, Dim> src = idx;
        for (int k = 0; k < Dim && !fixed; ++k)
        {
            if (side[k] == 0)
                continue;
            const auto &cond = domain.sides[2 * k + (side[k] > 0 ? 1 : 0)];
            switch (cond.kind)
            {
            case SideKind::Inflow:
                rule.kind = GhostRule<Dim>::Kind::Fixed;
                rule.fixed = cond.fixed;
                fixed = true;
                break;
            case SideKind::DmrTop:
                rule.kind = GhostRule<Dim>::Kind::MovingShock;
                rule.fixed = cond.fixed;
                rule.ambient = cond.ambient;
                rule.split_x = cond.split_x;
                rule.shock_speed = cond.shock_speed;
                rule.shock_angle_deg = cond.shock_angle_deg;
                fixed = true;
                break;
            case SideKind::DmrBottom:
                if (x[0] < cond.split_x)
                {
                    rule.kind = GhostRule<Dim>::Kind::Fixed;
                    rule.fixed = cond.fixed;
                    fixed = true;
                    break;
                }
                [[fallthrough]];
            case SideKind::Wall:
                src[k] = side[k] < 0 ? -1 - idx[k] : 2 * n[k] - 1 - idx[k];
                rule.normals[rule.normal_count++] = Vec<Dim>::Unit(k);
                if (cond.kind == SideKind::Wall && cond.no_slip && !rule.no_slip)
                {
                    rule.no_slip = true;
                    rule.wall_velocity = cond.wall_velocity;
                }
                break;
            case SideKind::ZeroGradient:
                src[k] = side[k] < 0 ? 0 : n[k] - 1;
                break;
            case SideKind::Periodic:
                throw ConfigError("periodic side mixed with ghost boundaries");
            }
        }
        if (!fixed)
        {
            long s = 0;
            for (int k = 0; k < Dim; ++k)
            {
                if (src[k] < 0 || src[k] >= n[k])
                    throw ConfigError("ghost layer thicker than the domain");
                s = s * n[k] + src[k];
            }
            rule.source = static_cast<Index>(s);
        }
        ghosts.positions.push_back(x);
        ghosts.rules.push_back(rule);
    }
    return ghosts;
}

namespace
{
// Mirror ghosts through the shape surface; the real particle nearest to each mirror point is the
// source. Candidates with d == 0 are dropped.
GhostSet<2> mirror_ghosts(const Shape &shape, const PointArray<2> &candidates, const PointArray<2> &real_positions,
                          const std::function<Vec2(const Vec2 &)> &wall_velocity, int tag)
{
    GhostSet<2> ghosts;
    for (const auto &x : candidates)
    {
        const double d = signed_distance(shape, Vec2(x));
        if (d == 0.0)
            continue;
        const Vec2 normal = distance_gradient<2>(shape, x);
        const Vec2 mirror = x - 2.0 * d * normal;
        double best = std::numeric_limits<double>::infinity();
        Index source = 0;
        for (std::size_t i = 0; i < real_positions.size(); ++i)
        {
            const double r = (real_positions[i] - mirror).squaredNorm();
            if (r < best)
            {
                best = r;
                source = static_cast<Index>(i);
            }
        }
        GhostRule<2> rule;
        rule.kind = GhostRule<2>::Kind::Mirror;
        rule.source = source;
        rule.normals[0] = normal;
        rule.normal_count = 1;
        rule.no_slip = true;
        rule.wall_velocity = wall_velocity ? wall_velocity(Vec2(x - d * normal)) : Vec2::Zero();
        rule.tag = tag;
        ghosts.positions.push_back(x);
        ghosts.rules.push_back(rule);
    }
    return ghosts;
}
} // namespace

GhostSet<2> build_shape_ghosts(const Shape &shape, const PointArray<2> &real_positions, double dp, double width,
                               const std::function<Vec2(const Vec2 &)> &wall_velocity, int tag)
{
    PointArray<2> candidates;
    for (const auto &x : exterior_band<2>(shape, dp, width))
        if (signed_distance(shape, Vec2(x)) > 0.0)
            candidates.push_back(x);
    return mirror_ghosts(shape, candidates, real_positions, wall_velocity, tag);
}

GhostSet<2> build_obstacle_ghosts(const Shape &shape, const PointArray<2> &candidates,
                                  const PointArray<2> &real_positions, double width, int tag)
{
    PointArray<2> inside;
    for (const auto &x : candidates)
    {
        const double d = signed_distance(shape, Vec2(x));
        if (d < 0.0 && d >= -width)
            inside.push_back(x);
    }
    return mirror_ghosts(shape, inside, real_positions, {}, tag);
}

template <int Dim>
void apply_boundaries(FluidFields<Dim> &fields, std::size_t n_real, const GhostSet<Dim> &ghosts, double t,
                      const EosParams &eos)
{
    for (std::size_t g = 0; g < ghosts.size(); ++g)
    {
        const auto &rule = ghosts.rules[g];
        const std::size_t k = n_real + g;
        PrimitiveState<Dim> s;
        switch (rule.kind)
        {
        case GhostRule<Dim>::Kind::Fixed:
            s = rule.fixed;
            break;
        case GhostRule<Dim>::Kind::MovingShock:
        {
            const Vec<Dim> &x = ghosts.positions[g];
            const double foot = dmr_shock_x(x[1], t, rule.split_x, rule.shock_speed, rule.shock_angle_deg);
            s = x[0] < foot ? rule.fixed : rule.ambient;
            break;
        }
        case GhostRule<Dim>::Kind::Mirror:
        {
            s.rho = fields.rho[rule.source];
            s.p = fields.p[rule.source];
            Vec<Dim> v = fields.v[rule.source];
            Vec<Dim> normal_part = Vec<Dim>::Zero();
            Vec<Dim> wall_tangent = rule.wall_velocity;
            for (int a = 0; a < rule.normal_count; ++a)
            {
                const Vec<Dim> &n = rule.normals[a];
                normal_part += v.dot(n) * n;
                wall_tangent -= rule.wall_velocity.dot(n) * n;
            }
            if (rule.no_slip)
                s.v = -normal_part + wall_tangent;
            else
                s.v = v - 2.0 * normal_part;
            break;
        }
        }
        fields.rho[k] = s.rho;
        fields.v[k] = s.v;
        fields.p[k] = s.p;
        if (eos.kind == EosKind::IdealGas)
        {
            fields.E[k] = total_energy_density(s.rho, s.p, s.v.squaredNorm(), eos);
            fields.c[k] = std::sqrt(eos.gamma * s.p / s.rho);
        }
        else
        {
            fields.E[k] = 0.5 * s.rho * s.v.squaredNorm();
            fields.c[k] = eos.sound_speed;
        }
    }
}

template struct FluidFields<2>;
template struct FluidFields<3>;
template struct RectangleDomain<2>;
template GhostSet<2> build_rectangle_ghosts<2>(const RectangleDomain<2> &, int);
template void apply_boundaries<2>(FluidFields<2> &, std::size_t, const GhostSet<2> &, double, const EosParams &);
} // namespace sphtrunc
