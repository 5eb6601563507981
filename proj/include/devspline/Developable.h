#pragma once

#include <sstream>
#include <utility>
#include <vector>

#include "BSplineCurve.h"
#include "common.h"
#include "errors.h"

namespace devspline {

/// b(u,v) = (1-v) c(u) + v d(u) over two curves with one knot list.
template <typename Scalar>
class RuledPatch
{
public:
    RuledPatch(BSplineCurve<Scalar> base, BSplineCurve<Scalar> opposite)
        : base_(std::move(base)), opposite_(std::move(opposite))
    {
        if (!base_.knots().approx_equal(opposite_.knots())) {
            throw StructuralError("ruled patch curves must share degree and knot list");
        }
    }

    const BSplineCurve<Scalar>& base() const { return base_; }
    const BSplineCurve<Scalar>& opposite() const { return opposite_; }
    const KnotVector<Scalar>& knots() const { return base_.knots(); }
    Scalar scale() const
    {
        return polygon_scale<Scalar>(base_.control_points(), opposite_.control_points());
    }

private:
    BSplineCurve<Scalar> base_;
    BSplineCurve<Scalar> opposite_;
};

template <typename Scalar>
struct RuledSample
{
    Point3<Scalar> point;
    bool extended = false; // v outside [0,1]
};

template <typename Scalar>
RuledSample<Scalar> ruled_eval(const RuledPatch<Scalar>& patch, Scalar u, Scalar v)
{
    const Point3<Scalar> c = evaluate(patch.base(), u);
    const Point3<Scalar> d = evaluate(patch.opposite(), u);
    return {(Scalar(1) - v) * c + v * d, v < Scalar(0) || v > Scalar(1)};
}

/**
 * Coplanarity defect of the cell {c_i, c_{i+1}, d_i, d_{i+1}}:
 * |det(c_{i+1}-c_i, d_i-c_i, d_{i+1}-c_i)| over the product of the three edge
 * lengths. Zero iff the four points are coplanar; never exceeds one.
 */
template <typename Scalar>
Scalar cell_planarity_residual(const Point3<Scalar>& c0, const Point3<Scalar>& c1,
                               const Point3<Scalar>& d0, const Point3<Scalar>& d1)
{
    const Vector3<Scalar> e1 = c1 - c0;
    const Vector3<Scalar> e2 = d0 - c0;
    const Vector3<Scalar> e3 = d1 - c0;
    const Scalar volume = std::abs(triple_product<Scalar>(e1, e2, e3));
    const Scalar norms = e1.norm() * e2.norm() * e3.norm();
    if (!(norms > Scalar(0))) return Scalar(0);
    return volume / norms;
}

template <typename Scalar>
std::vector<Scalar> net_planarity(const Polygon<Scalar>& c, const Polygon<Scalar>& d)
{
    std::vector<Scalar> residuals;
    for (Index i = 0; i + 1 < c.rows(); ++i) {
        residuals.push_back(cell_planarity_residual<Scalar>(row_point(c, i), row_point(c, i + 1),
                                                            row_point(d, i), row_point(d, i + 1)));
    }
    return residuals;
}

/**
 * Per-cell defect of
 *   (u_{i+n}-L) c_i + (L-u_i) c_{i+1} = (u_{i+n}-M) d_i + (M-u_i) d_{i+1}
 * with both sides divided by (u_{i+n}-u_i) so they are barycentric points;
 * the distance between them is measured in units of the cell's longest edge.
 */
template <typename Scalar>
std::vector<Scalar> control_relation_residuals(const BSplineCurve<Scalar>& c,
                                               const BSplineCurve<Scalar>& d, Scalar lambda_star,
                                               Scalar m_star)
{
    if (!c.knots().approx_equal(d.knots())) {
        throw StructuralError("control relation needs curves over one knot list and degree");
    }
    const auto& u = c.knots();
    const int n = c.degree();
    std::vector<Scalar> residuals;
    for (Index i = 0; i < c.last_index(); ++i) {
        const Scalar width = u[i + n] - u[i];
        const Point3<Scalar> ci = c.control_point(i), ci1 = c.control_point(i + 1);
        const Point3<Scalar> di = d.control_point(i), di1 = d.control_point(i + 1);
        const Point3<Scalar> lhs = ((u[i + n] - lambda_star) * ci + (lambda_star - u[i]) * ci1) / width;
        const Point3<Scalar> rhs = ((u[i + n] - m_star) * di + (m_star - u[i]) * di1) / width;
        Scalar edge = std::max({(ci1 - ci).norm(), (di1 - di).norm(), (di - ci).norm(),
                                (di1 - ci1).norm()});
        if (!(edge > Scalar(0))) edge = Scalar(1);
        residuals.push_back((lhs - rhs).norm() / edge);
    }
    return residuals;
}

/**
 * Two curves c, d over one knot list plus constants Lambda*, M* whose nets
 * satisfy the linear control relation cell by cell, which makes the ruled
 * surface between them developable. Construction checks the relation and the
 * planarity of every cell.
 */
template <typename Scalar>
class DevelopableStrip
{
public:
    DevelopableStrip(BSplineCurve<Scalar> base, BSplineCurve<Scalar> opposite, Scalar lambda_star,
                     Scalar m_star)
        : patch_(std::move(base), std::move(opposite)), lambda_star_(lambda_star), m_star_(m_star)
    {
        const Scalar tol = tolerance::strip_invariant<Scalar>;
        const auto relation = control_relation_residuals(this->base(), this->opposite(),
                                                         lambda_star_, m_star_);
        const auto planarity = net_planarity<Scalar>(this->base().control_points(),
                                                     this->opposite().control_points());
        Index worst = -1;
        Scalar worst_value = 0;
        for (size_t i = 0; i < relation.size(); ++i) {
            const Scalar value = std::max(relation[i], planarity[i]);
            if (value > worst_value) {
                worst_value = value;
                worst = static_cast<Index>(i);
            }
        }
        if (worst_value > tol) {
            std::ostringstream msg;
            msg << "not a developable strip: cell " << worst << " has control-relation defect "
                << relation[static_cast<size_t>(worst)] << " and planarity defect "
                << planarity[static_cast<size_t>(worst)] << " (tolerance " << tol << ")";
            throw InvalidStripError(msg.str(), worst, static_cast<double>(worst_value));
        }
    }

    const BSplineCurve<Scalar>& base() const { return patch_.base(); }
    const BSplineCurve<Scalar>& opposite() const { return patch_.opposite(); }
    const RuledPatch<Scalar>& patch() const { return patch_; }
    Scalar lambda_star() const { return lambda_star_; }
    Scalar m_star() const { return m_star_; }

private:
    RuledPatch<Scalar> patch_;
    Scalar lambda_star_;
    Scalar m_star_;
};

template <typename Scalar>
Scalar verify_control_relation(const BSplineCurve<Scalar>& c, const BSplineCurve<Scalar>& d,
                               Scalar lambda_star, Scalar m_star)
{
    const auto residuals = control_relation_residuals(c, d, lambda_star, m_star);
    return residuals.empty() ? Scalar(0) : *std::max_element(residuals.begin(), residuals.end());
}

template <typename Scalar>
Scalar verify_control_relation(const DevelopableStrip<Scalar>& strip)
{
    return verify_control_relation(strip.base(), strip.opposite(), strip.lambda_star(),
                                   strip.m_star());
}

/**
 * Lambda*, M* carried by one net cell {c0, c1, d0, d1} whose knot window is
 * [lo, hi] = [u_i, u_{i+n}]. The control relation reads
 *   Lambda (c1 - c0) - M (d1 - d0) = hi (d0 - c0) - lo (d1 - c1),
 * solved in the least-squares sense and required to hold exactly.
 */
template <typename Scalar>
std::pair<Scalar, Scalar> cell_parameters(const Point3<Scalar>& c0, const Point3<Scalar>& c1,
                                          const Point3<Scalar>& d0, const Point3<Scalar>& d1, Scalar lo,
                                          Scalar hi)
{
    const Vector3<Scalar> a = c1 - c0;
    const Vector3<Scalar> b = d0 - d1;
    const Vector3<Scalar> rhs = hi * (d0 - c0) - lo * (d1 - c1);
    // normal equations of [a b] (Lambda, M)^T = rhs
    const Scalar aa = a.dot(a), ab = a.dot(b), bb = b.dot(b);
    const Scalar det = aa * bb - ab * ab;
    if (!(det > tolerance::parallel<Scalar> * aa * bb)) {
        throw ArgumentError("cell edges are parallel; constant parameters are not determined");
    }
    const Scalar lambda = (bb * a.dot(rhs) - ab * b.dot(rhs)) / det;
    const Scalar m = (aa * b.dot(rhs) - ab * a.dot(rhs)) / det;
    const Scalar scale = std::max({std::abs(lambda) * a.norm(), std::abs(m) * b.norm(), rhs.norm()});
    if ((lambda * a + m * b - rhs).norm() > tolerance::strip_invariant<Scalar> * scale) {
        throw ArgumentError("cell is not planar; no constant parameters fit it");
    }
    return {lambda, m};
}

namespace detail {

/**
 * Opposite polygon from the first ruling e_0 = d_0 - c_0, with the control
 * relation rewritten for e_i = d_i - c_i:
 *   e_{i+1} = ((M - Lambda)(c_i - c_{i+1}) + (M - u_{i+n}) e_i) / (M - u_i),
 * taking gap = M - Lambda directly.
 */
template <typename Scalar>
BSplineCurve<Scalar> propagate_offsets(const BSplineCurve<Scalar>& c, const Vector3<Scalar>& e0, Scalar m_star,
                                       Scalar gap)
{
    const auto& u = c.knots();
    const int n = c.degree();
    const Scalar guard = tolerance::pole_guard<Scalar> * u.domain_length();
    for (Index i = 0; i < c.last_index(); ++i) {
        if (std::abs(m_star - u[i]) <= guard) {
            std::ostringstream msg;
            msg << "M* = " << m_star << " hits knot u_" << i << " = " << u[i]
                << " in the control recursion";
            throw PoleError(msg.str(), i);
        }
    }
    Polygon<Scalar> d(c.last_index() + 1, 3);
    Vector3<Scalar> e = e0;
    d.row(0) = (c.control_point(0) + e).transpose();
    for (Index i = 0; i < c.last_index(); ++i) {
        e = (gap * (c.control_point(i) - c.control_point(i + 1)) + (m_star - u[i + n]) * e) / (m_star - u[i]);
        d.row(i + 1) = (c.control_point(i + 1) + e).transpose();
    }
    return BSplineCurve<Scalar>(c.knots(), std::move(d));
}

} // namespace detail

/// Opposite polygon from d_0 by solving the control relation forward for d_{i+1}.
template <typename Scalar>
BSplineCurve<Scalar> propagate_polygon(const BSplineCurve<Scalar>& c, const Point3<Scalar>& d0,
                                       Scalar lambda_star, Scalar m_star)
{
    return detail::propagate_offsets<Scalar>(c, d0 - c.control_point(0), m_star, m_star - lambda_star);
}

using DevelopableStripd = DevelopableStrip<double>;
using RuledPatchd = RuledPatch<double>;

} // namespace devspline
