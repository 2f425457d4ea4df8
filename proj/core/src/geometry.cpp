#include "sphtrunc/geometry.h"

#include <algorithm>
#include <array>
#include <cmath>

namespace sphtrunc
{
namespace
{
template <class... Ts>
struct Overloaded : Ts...
{
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

template <int Dim>
double box_distance(const Vec<Dim> &lower, const Vec<Dim> &upper, const Vec<Dim> &x)
{
    const Vec<Dim> center = 0.5 * (lower + upper);
    const Vec<Dim> half = 0.5 * (upper - lower);
    const Vec<Dim> q = (x - center).cwiseAbs() - half;
    return q.cwiseMax(0.0).norm() + std::min(q.maxCoeff(), 0.0);
}

double semicircle_distance(const SemiCircle &s, const Vec2 &x)
{
    const Vec2 n = s.flat_normal.normalized();
    const Vec2 t(-n.y(), n.x());
    const Vec2 p = x - s.center;
    const double a = p.dot(n);
    const double b = p.dot(t);
    if (a <= 0.0)
    {
        const double arc = p.norm() - s.radius;
        return arc > 0.0 ? arc : std::max(arc, a);
    }
    if (std::abs(b) <= s.radius)
        return a;
    return std::hypot(std::abs(b) - s.radius, a);
}

template <int Dim>
std::array<long, Dim> lattice_counts(const Vec<Dim> &lower, const Vec<Dim> &upper, double dp)
{
    std::array<long, Dim> n{};
    for (int k = 0; k < Dim; ++k)
        n[k] = std::max(1L, static_cast<long>(std::ceil((upper[k] - lower[k]) / dp - 1e-9)));
    return n;
}

// Visits cell centers lower + (k + 1/2) dp in row-major order (last axis fastest).
template <int Dim, typename Visitor>
void for_each_cell_center(const Vec<Dim> &lower, const std::array<long, Dim> &n, double dp, Visitor &&visit)
{
    std::array<long, Dim> k{};
    long total = 1;
    for (int d = 0; d < Dim; ++d)
        total *= n[d];
    for (long flat = 0; flat < total; ++flat)
    {
        long rem = flat;
        for (int d = Dim - 1; d >= 0; --d)
        {
            k[d] = rem % n[d];
            rem /= n[d];
        }
        Vec<Dim> x;
        for (int d = 0; d < Dim; ++d)
            x[d] = lower[d] + (static_cast<double>(k[d]) + 0.5) * dp;
        visit(x);
    }
}
} // namespace

int shape_dimension(const Shape &shape)
{
    return std::holds_alternative<Box3>(shape) ? 3 : 2;
}

void validate(const Shape &shape)
{
    std::visit(Overloaded{
                   [](const Circle &c) {
                       if (!(c.diameter > 0.0))
                           throw InputError("circle diameter must be positive");
                   },
                   [](const Rectangle &r) {
                       if (!((r.upper - r.lower).array() > 0.0).all())
                           throw InputError("rectangle extents must be positive");
                   },
                   [](const SemiCircle &s) {
                       if (!(s.radius > 0.0))
                           throw InputError("semicircle radius must be positive");
                       if (!(s.flat_normal.norm() > 0.0))
                           throw InputError("semicircle flat-side normal must be non-zero");
                   },
                   [](const Box3 &b) {
                       if (!((b.upper - b.lower).array() > 0.0).all())
                           throw InputError("box extents must be positive");
                   },
               },
               shape);
}

double signed_distance(const Shape &shape, const Vec2 &x)
{
    return std::visit(Overloaded{
                          [&](const Circle &c) { return (x - c.center).norm() - 0.5 * c.diameter; },
                          [&](const Rectangle &r) { return box_distance<2>(r.lower, r.upper, x); },
                          [&](const SemiCircle &s) { return semicircle_distance(s, x); },
                          [](const Box3 &) -> double { throw InputError("3D box queried with a 2D point"); },
                      },
                      shape);
}

double signed_distance(const Shape &shape, const Vec3 &x)
{
    if (const auto *b = std::get_if<Box3>(&shape))
        return box_distance<3>(b->lower, b->upper, x);
    throw InputError("2D shape queried with a 3D point");
}

template <int Dim>
void bounding_box(const Shape &shape, Vec<Dim> &lower, Vec<Dim> &upper)
{
    if (shape_dimension(shape) != Dim)
        throw InputError("shape dimension does not match the requested point dimension");
    if constexpr (Dim == 3)
    {
        const auto &b = std::get<Box3>(shape);
        lower = b.lower;
        upper = b.upper;
    }
    else if constexpr (Dim == 2)
    {
        std::visit(Overloaded{
                       [&](const Circle &c) {
                           lower = c.center.array() - 0.5 * c.diameter;
                           upper = c.center.array() + 0.5 * c.diameter;
                       },
                       [&](const Rectangle &r) {
                           lower = r.lower;
                           upper = r.upper;
                       },
                       [&](const SemiCircle &s) {
                           lower = s.center.array() - s.radius;
                           upper = s.center.array() + s.radius;
                       },
                       [](const Box3 &) {},
                   },
                   shape);
    }
}

template <int Dim>
Vec<Dim> distance_gradient(const Shape &shape, const Vec<Dim> &x)
{
    Vec<Dim> lo, hi;
    bounding_box<Dim>(shape, lo, hi);
    const double eps = 1e-7 * std::max(1.0, (hi - lo).maxCoeff());
    Vec<Dim> g;
    for (int k = 0; k < Dim; ++k)
    {
        Vec<Dim> xp = x, xm = x;
        xp[k] += eps;
        xm[k] -= eps;
        g[k] = (signed_distance(shape, xp) - signed_distance(shape, xm)) / (2.0 * eps);
    }
    const double norm = g.norm();
    return norm > 0.0 ? Vec<Dim>(g / norm) : Vec<Dim>::Zero();
}

template <int Dim>
Vec<Dim> project_to_surface(const Shape &shape, const Vec<Dim> &x)
{
    Vec<Dim> p = x;
    // Exact SDFs converge in one step away from corners; a few repeats cover the rest.
    for (int iter = 0; iter < 4; ++iter)
    {
        const double d = signed_distance(shape, p);
        if (std::abs(d) < 1e-14)
            break;
        p -= d * distance_gradient<Dim>(shape, p);
    }
    return p;
}

template <int Dim>
PointArray<Dim> lattice_fill(const Shape &shape, double dp)
{
    if (!(dp > 0.0) || !std::isfinite(dp))
        throw InputError("lattice spacing must be positive and finite");
    validate(shape);
    Vec<Dim> lo, hi;
    bounding_box<Dim>(shape, lo, hi);
    const auto n = lattice_counts<Dim>(lo, hi, dp);
    PointArray<Dim> points;
    for_each_cell_center<Dim>(lo, n, dp, [&](const Vec<Dim> &x) {
        if (signed_distance(shape, x) < 0.0)
            points.push_back(x);
    });
    if (points.empty())
        throw InputError("shape is smaller than one lattice cell; no particles generated");
    return points;
}

template <int Dim>
PointArray<Dim> exterior_band(const Shape &shape, double dp, double width)
{
    if (!(dp > 0.0) || !(width > 0.0))
        throw InputError("band spacing and width must be positive");
    Vec<Dim> lo, hi;
    bounding_box<Dim>(shape, lo, hi);
    // Extend by whole cells so the band lattice stays aligned with lattice_fill at the same spacing.
    const double pad = std::ceil(width / dp - 1e-9) * dp;
    lo.array() -= pad;
    hi.array() += pad;
    const auto n = lattice_counts<Dim>(lo, hi, dp);
    PointArray<Dim> points;
    for_each_cell_center<Dim>(lo, n, dp, [&](const Vec<Dim> &x) {
        const double d = signed_distance(shape, x);
        if (d >= 0.0 && d <= width)
            points.push_back(x);
    });
    return points;
}

template void bounding_box<2>(const Shape &, Vec2 &, Vec2 &);
template void bounding_box<3>(const Shape &, Vec3 &, Vec3 &);
template Vec2 distance_gradient<2>(const Shape &, const Vec2 &);
template Vec3 distance_gradient<3>(const Shape &, const Vec3 &);
template Vec2 project_to_surface<2>(const Shape &, const Vec2 &);
template Vec3 project_to_surface<3>(const Shape &, const Vec3 &);
template PointArray<2> lattice_fill<2>(const Shape &, double);
template PointArray<3> lattice_fill<3>(const Shape &, double);
template PointArray<2> exterior_band<2>(const Shape &, double, double);
template PointArray<3> exterior_band<3>(const Shape &, double, double);
} // namespace sphtrunc
