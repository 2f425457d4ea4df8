#pragma once

#include "sphtrunc/types.h"

#include <variant>

namespace sphtrunc
{
struct Circle
{
    Vec2 center = Vec2::Zero();
    double diameter = 2.0;
};

struct Rectangle
{
    Vec2 lower = Vec2::Zero();
    Vec2 upper = Vec2::Ones();
};

/// Half disc: the points of the disc on the side of the flat edge opposite to flat_normal.
/// flat_normal is the outward normal of the flat edge (e.g. (0, 1) for a bowl open at the top).
struct SemiCircle
{
    Vec2 center = Vec2::Zero();
    double radius = 0.5;
    Vec2 flat_normal = Vec2(0.0, 1.0);
};

struct Box3
{
    Vec3 lower = Vec3::Zero();
    Vec3 upper = Vec3::Ones();
};

using Shape = std::variant<Circle, Rectangle, SemiCircle, Box3>;

int shape_dimension(const Shape &shape);
/// Throws InputError for non-positive extents or radii.
void validate(const Shape &shape);

/// Exact signed distance, negative inside.
double signed_distance(const Shape &shape, const Vec2 &x);
double signed_distance(const Shape &shape, const Vec3 &x);

template <int Dim>
double signed_distance_at(const Shape &shape, const Vec<Dim> &x)
{
    return signed_distance(shape, x);
}

/// Unit gradient of the signed distance (outward normal on the surface), by central differences.
template <int Dim>
Vec<Dim> distance_gradient(const Shape &shape, const Vec<Dim> &x);

/// Closest point on the zero level set.
template <int Dim>
Vec<Dim> project_to_surface(const Shape &shape, const Vec<Dim> &x);

template <int Dim>
void bounding_box(const Shape &shape, Vec<Dim> &lower, Vec<Dim> &upper);

/// Cell-center lattice points with spacing dp strictly inside the shape, row-major (last axis
/// fastest). Throws InputError if dp <= 0 or no point falls inside.
template <int Dim>
PointArray<Dim> lattice_fill(const Shape &shape, double dp);

/// Lattice points with spacing dp covering the outside band 0 <= distance <= width.
template <int Dim>
PointArray<Dim> exterior_band(const Shape &shape, double dp, double width);
} // namespace sphtrunc
