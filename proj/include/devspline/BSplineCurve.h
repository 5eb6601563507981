#pragma once

#include <functional>
#include <span>
#include <sstream>
#include <utility>
#include <vector>

#include "KnotVector.h"
#include "common.h"
#include "errors.h"

namespace devspline {

template <typename Scalar>
class BSplineCurve
{
public:
    using Point = Point3<Scalar>;
    using ControlPolygon = Polygon<Scalar>;

    BSplineCurve(KnotVector<Scalar> knots, ControlPolygon control)
        : knots_(std::move(knots)), control_(std::move(control))
    {
        if (control_.rows() != knots_.control_count()) {
            std::ostringstream msg;
            msg << "degree " << knots_.degree() << " with " << knots_.size() << " knots needs "
                << knots_.control_count() << " control points, got " << control_.rows();
            throw ArgumentError(msg.str());
        }
        if (!control_.allFinite()) throw ArgumentError("control points must be finite");
    }

    /**
     * Accepts either knot convention: the polar-form list with
     * (control count + degree - 1) knots, or the conventional clamped list
     * with two more knots whose first and last entries never enter the
     * evaluation and are dropped.
     */
    static BSplineCurve from_knot_list(int degree, std::vector<Scalar> knots, ControlPolygon control)
    {
        const auto points = static_cast<Index>(control.rows());
        const auto count = static_cast<Index>(knots.size());
        if (points == 0) throw ArgumentError("control polygon is empty");
        if (count == points + degree + 1 && count >= 2) {
            knots.erase(knots.begin());
            knots.pop_back();
        } else if (count != points + degree - 1) {
            std::ostringstream msg;
            msg << "degree " << degree << " with " << points << " control points needs "
                << points + degree - 1 << " knots (or " << points + degree + 1
                << " with unused end knots), got " << count;
            throw ArgumentError(msg.str());
        }
        return BSplineCurve(KnotVector<Scalar>(std::move(knots), degree), std::move(control));
    }

    int degree() const { return knots_.degree(); }
    const KnotVector<Scalar>& knots() const { return knots_; }
    const ControlPolygon& control_points() const { return control_; }
    Point control_point(Index i) const { return control_.row(i).transpose(); }
    Index last_index() const { return control_.rows() - 1; }

    Scalar domain_start() const { return knots_.domain_start(); }
    Scalar domain_end() const { return knots_.domain_end(); }
    Index piece_count() const { return knots_.piece_count(); }

    Scalar scale() const { return polygon_scale<Scalar>(control_); }

private:
    KnotVector<Scalar> knots_;
    ControlPolygon control_;
};

namespace detail {

/// Generalised De Boor recursion on span j, interpolating with args[r-1] at step r.
template <typename Scalar>
Point3<Scalar> deboor_blossom(const BSplineCurve<Scalar>& curve, Index span,
                              std::span<const Scalar> args)
{
    const int n = curve.degree();
    const auto& u = curve.knots();
    const Index first = span - n + 1;
    std::vector<Point3<Scalar>> work(static_cast<size_t>(n + 1));
    for (int i = 0; i <= n; ++i) work[static_cast<size_t>(i)] = curve.control_point(first + i);

    for (int r = 1; r <= n; ++r) {
        const Scalar v = args[static_cast<size_t>(r - 1)];
        for (int i = 0; i <= n - r; ++i) {
            const Scalar hi = u[first + i + n];
            const Scalar lo = u[first + i + r - 1];
            const Scalar denom = hi - lo;
            if (!(denom > Scalar(0))) {
                throw MalformedKnotsError("zero-length interpolation interval in De Boor step");
            }
            auto& p = work[static_cast<size_t>(i)];
            p = ((hi - v) * p + (v - lo) * work[static_cast<size_t>(i + 1)]) / denom;
        }
    }
    return work.front();
}

} // namespace detail

/// Blossom c[args...] of the polynomial carried by one piece.
template <typename Scalar>
Point3<Scalar> blossom_eval(const BSplineCurve<Scalar>& curve, Index piece,
                            std::span<const Scalar> args)
{
    if (static_cast<Index>(args.size()) != curve.degree()) {
        throw ArgumentError("blossom of a degree-" + std::to_string(curve.degree()) +
                            " curve takes " + std::to_string(curve.degree()) + " arguments, got " +
                            std::to_string(args.size()));
    }
    return detail::deboor_blossom(curve, curve.knots().span_of_piece(piece), args);
}

template <typename Scalar>
Point3<Scalar> blossom_eval(const BSplineCurve<Scalar>& curve, Index piece,
                            std::initializer_list<Scalar> args)
{
    return blossom_eval(curve, piece, std::span<const Scalar>(args.begin(), args.size()));
}

template <typename Scalar>
Point3<Scalar> evaluate(const BSplineCurve<Scalar>& curve, Scalar u)
{
    const Index piece = curve.knots().piece_of(u);
    const std::vector<Scalar> args(static_cast<size_t>(curve.degree()), u);
    return detail::deboor_blossom(curve, curve.knots().span_of_piece(piece), std::span(args));
}

/// c'(u) from the blossom difference across the active span.
template <typename Scalar>
Vector3<Scalar> derivative_at(const BSplineCurve<Scalar>& curve, Scalar u)
{
    const auto& knots = curve.knots();
    const Index span = knots.span_of_piece(knots.piece_of(u));
    const int n = curve.degree();
    std::vector<Scalar> args(static_cast<size_t>(n), u);
    args.back() = knots[span + 1];
    const Point3<Scalar> hi = detail::deboor_blossom(curve, span, std::span<const Scalar>(args));
    args.back() = knots[span];
    const Point3<Scalar> lo = detail::deboor_blossom(curve, span, std::span<const Scalar>(args));
    return Scalar(n) * (hi - lo) / (knots[span + 1] - knots[span]);
}

/**
 * A symmetric multiaffine point-valued form, piecewise in the parameter.
 * `eval(anchor, args)` evaluates the polynomial piece containing `anchor`;
 * anchors are always interior to a piece.
 */
template <typename Scalar>
struct BlossomForm
{
    int arity = 0;
    std::function<Point3<Scalar>(Scalar anchor, std::span<const Scalar> args)> eval;
};

template <typename Scalar>
BlossomForm<Scalar> curve_blossom(const BSplineCurve<Scalar>& curve)
{
    return {curve.degree(), [curve](Scalar anchor, std::span<const Scalar> args) {
                return blossom_eval(curve, curve.knots().piece_of(anchor), args);
            }};
}

/// Blossom of the curve written with degree n+1: the average of the n-ary
/// blossom over the n+1 ways of dropping one argument.
template <typename Scalar>
BlossomForm<Scalar> elevated_blossom(const BSplineCurve<Scalar>& curve)
{
    const int n = curve.degree();
    return {n + 1, [curve, n](Scalar anchor, std::span<const Scalar> args) {
                const Index piece = curve.knots().piece_of(anchor);
                std::vector<Scalar> rest(static_cast<size_t>(n));
                Point3<Scalar> sum = Point3<Scalar>::Zero();
                for (int skip = 0; skip <= n; ++skip) {
                    for (int k = 0, m = 0; k <= n; ++k) {
                        if (k != skip) rest[static_cast<size_t>(m++)] = args[static_cast<size_t>(k)];
                    }
                    sum += blossom_eval(curve, piece, std::span<const Scalar>(rest));
                }
                return Point3<Scalar>(sum / Scalar(n + 1));
            }};
}

/**
 * Control polygon c_i = form[u_i, ..., u_{i+n-1}] over the given knots. Each
 * control point is read from a piece it influences, i.e. a nondegenerate
 * span among [u_{i-1}, u_i] .. [u_{i+n-1}, u_{i+n}] inside the domain.
 */
template <typename Scalar>
Polygon<Scalar> control_from_blossom(const BlossomForm<Scalar>& form, const KnotVector<Scalar>& knots)
{
    const int n = knots.degree();
    if (form.arity != n) {
        throw ArgumentError("form arity " + std::to_string(form.arity) +
                            " does not match knot degree " + std::to_string(n));
    }
    const Index last = knots.last_index();
    const Scalar tol = knots.tolerance();
    Polygon<Scalar> control(last + 1, 3);
    for (Index i = 0; i <= last; ++i) {
        Index span = -1;
        for (Index j = std::max<Index>(i - 1, n - 1); j <= std::min<Index>(i + n - 1, last - 1); ++j) {
            if (knots[j + 1] - knots[j] > tol) {
                span = j;
                break;
            }
        }
        if (span < 0) {
            throw MalformedKnotsError("control point " + std::to_string(i) +
                                      " touches no nondegenerate span");
        }
        const Scalar anchor = Scalar(0.5) * (knots[span] + knots[span + 1]);
        const std::span<const Scalar> window(knots.values().data() + i, static_cast<size_t>(n));
        control.row(i) = form.eval(anchor, window).transpose();
    }
    return control;
}

/// Refinement by one knot; the new vertices are read off the blossom.
template <typename Scalar>
BSplineCurve<Scalar> insert_knot(const BSplineCurve<Scalar>& curve, Scalar u_new)
{
    const auto& knots = curve.knots();
    const Scalar tol = knots.tolerance();
    if (!(u_new > knots.domain_start() + tol && u_new < knots.domain_end() - tol)) {
        std::ostringstream msg;
        msg << "cannot insert knot " << u_new << " outside the open domain (" << knots.domain_start()
            << ", " << knots.domain_end() << ")";
        throw InvalidInsertionError(msg.str());
    }
    if (knots.multiplicity(u_new) + 1 > curve.degree()) {
        std::ostringstream msg;
        msg << "inserting " << u_new << " would raise its multiplicity above degree "
            << curve.degree();
        throw InvalidInsertionError(msg.str());
    }
    KnotVector<Scalar> refined = knots.with_knot(u_new);
    Polygon<Scalar> control = control_from_blossom(curve_blossom(curve), refined);
    return BSplineCurve<Scalar>(std::move(refined), std::move(control));
}

template <typename Scalar>
BSplineCurve<Scalar> elevate_degree(const BSplineCurve<Scalar>& curve)
{
    KnotVector<Scalar> elevated = curve.knots().elevated();
    Polygon<Scalar> control = control_from_blossom(elevated_blossom(curve), elevated);
    return BSplineCurve<Scalar>(std::move(elevated), std::move(control));
}

using BSplineCurved = BSplineCurve<double>;
using KnotVectord = KnotVector<double>;

} // namespace devspline
