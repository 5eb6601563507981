#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>

namespace devspline {

using Index = Eigen::Index;

template <typename Scalar>
using Point3 = Eigen::Matrix<Scalar, 3, 1>;

template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;

/// Control polygon, one point per row.
template <typename Scalar>
using Polygon = Eigen::Matrix<Scalar, Eigen::Dynamic, 3>;

namespace tolerance {

// Knots closer than this fraction of the domain length are the same knot.
template <typename Scalar>
inline constexpr Scalar knot_equality = Scalar(1e-12);

// M* closer than this fraction of the domain length to a knot is a pole.
template <typename Scalar>
inline constexpr Scalar pole_guard = Scalar(1e-6);

// Invariant checks on constructed strips (dimensionless).
template <typename Scalar>
inline constexpr Scalar strip_invariant = Scalar(1e-9);

template <typename Scalar>
inline constexpr Scalar root_dedupe = Scalar(1e-9);

template <typename Scalar>
inline constexpr Scalar parallel = Scalar(1e-9);

// Sine of the angle between a(M*) - c_L and the plane of the rulings at an accepted root.
template <typename Scalar>
inline constexpr Scalar root_validity = Scalar(1e-8);

} // namespace tolerance

template <typename Scalar>
Scalar triple_product(const Vector3<Scalar>& a, const Vector3<Scalar>& b, const Vector3<Scalar>& c)
{
    return a.dot(b.cross(c));
}

/// Bounding-box diagonal of one or more polygons; 1 for a degenerate box.
template <typename Scalar>
Scalar polygon_scale(const Polygon<Scalar>& polygon)
{
    if (polygon.rows() == 0) return Scalar(1);
    const Scalar diag = (polygon.colwise().maxCoeff() - polygon.colwise().minCoeff()).norm();
    return diag > Scalar(0) ? diag : Scalar(1);
}

template <typename Scalar>
Scalar polygon_scale(const Polygon<Scalar>& a, const Polygon<Scalar>& b)
{
    Polygon<Scalar> stacked(a.rows() + b.rows(), 3);
    stacked << a, b;
    return polygon_scale<Scalar>(stacked);
}

template <typename Scalar>
Point3<Scalar> row_point(const Polygon<Scalar>& polygon, Index i)
{
    return polygon.row(i).transpose();
}

} // namespace devspline
