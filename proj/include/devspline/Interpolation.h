#pragma once

#include <array>
#include <optional>
#include <sstream>
#include <variant>
#include <vector>

#include "BSplineCurve.h"
#include "Developable.h"
#include "Polynomial.h"
#include "common.h"
#include "errors.h"

namespace devspline {

/// Point-valued rational function of one variable with a shared denominator.
template <typename Scalar>
struct RationalPoint3Function
{
    std::array<Polynomial<Scalar>, 3> numerators;
    Polynomial<Scalar> denominator;

    Point3<Scalar> operator()(Scalar x) const
    {
        const Scalar den = denominator(x);
        return Point3<Scalar>(numerators[0](x), numerators[1](x), numerators[2](x)) / den;
    }
};

/**
 * a(M*) from the net of c, the point that the last ruling is expressed
 * against. The factor (M* - u_{L-1}) common to every term is cancelled, so
 * the denominator is prod_{k=0}^{L-2} (M* - u_k).
 */
template <typename Scalar>
RationalPoint3Function<Scalar> build_a_rational(const BSplineCurve<Scalar>& c)
{
    using Poly = Polynomial<Scalar>;
    const auto& u = c.knots();
    const int n = c.degree();
    const Index L = c.last_index();
    if (L < 1) throw ArgumentError("a(M*) needs at least two control points");

    auto product = [](Index from, Index to, auto&& knot) {
        Poly acc = Poly::constant(Scalar(1));
        for (Index k = from; k <= to; ++k) acc = acc * Poly::linear_factor(knot(k));
        return acc;
    };

    RationalPoint3Function<Scalar> a;
    a.denominator = product(0, L - 2, [&](Index k) { return u[k]; });

    // c_0: prod_{i=1}^{L-1} (M* - u_{i+n})
    std::vector<Poly> weights(static_cast<size_t>(L));
    weights[0] = product(1, L - 1, [&](Index i) { return u[i + n]; });
    // c_i: (u_{i+n} - u_{i-1}) prod_{j=i}^{L-2} (M* - u_{n+j+1}) prod_{k=0}^{i-2} (M* - u_k)
    for (Index i = 1; i < L; ++i) {
        weights[static_cast<size_t>(i)] = (u[i + n] - u[i - 1]) *
                                          product(i, L - 2, [&](Index j) { return u[n + j + 1]; }) *
                                          product(0, i - 2, [&](Index k) { return u[k]; });
    }
    for (int axis = 0; axis < 3; ++axis) {
        Poly sum;
        for (Index i = 0; i < L; ++i) {
            sum += weights[static_cast<size_t>(i)] * c.control_points()(i, axis);
        }
        a.numerators[static_cast<size_t>(axis)] = sum;
    }
    return a;
}

namespace detail {

template <typename Scalar>
void check_ruling_directions(const Vector3<Scalar>& v, const Vector3<Scalar>& w)
{
    if (!(v.norm() > Scalar(0))) throw DegenerateCaseError("first ruling direction is zero", DegenerateKind::ZeroRuling);
    if (!(w.norm() > Scalar(0))) throw DegenerateCaseError("last ruling direction is zero", DegenerateKind::ZeroRuling);
    if (v.cross(w).norm() <= tolerance::parallel<Scalar> * v.norm() * w.norm()) {
        throw DegenerateCaseError("end rulings are parallel (cylinder case, not constructed)",
                                  DegenerateKind::Cylinder);
    }
}

} // namespace detail

/**
 * Numerator of det(a(M*) - c_L, v, w) with the denominator of a cleared.
 * An identically zero result means every M* is admissible (planar data).
 */
template <typename Scalar>
Polynomial<Scalar> cramer_polynomial(const BSplineCurve<Scalar>& c, const Vector3<Scalar>& v,
                                     const Vector3<Scalar>& w)
{
    detail::check_ruling_directions(v, w);
    const RationalPoint3Function<Scalar> a = build_a_rational(c);
    const Vector3<Scalar> normal = v.cross(w);
    Polynomial<Scalar> numerator = a.numerators[0] * normal.x() + a.numerators[1] * normal.y() +
                                   a.numerators[2] * normal.z();
    const Scalar end_height = c.control_point(c.last_index()).dot(normal);
    numerator -= a.denominator * end_height;

    // Cancellation leaves rounding noise in place of exact zeros; measure it
    // against the size of the terms that were summed.
    Scalar magnitude = std::abs(end_height) * a.denominator.magnitude_at(Scalar(1));
    for (const auto& num : a.numerators) magnitude += num.magnitude_at(Scalar(1)) * normal.norm();
    std::vector<Scalar> coefficients = numerator.coefficients();
    const Scalar noise = Scalar(1e-12) * magnitude;
    while (!coefficients.empty() && std::abs(coefficients.back()) <= noise) coefficients.pop_back();
    return Polynomial<Scalar>(std::move(coefficients));
}

template <typename Scalar>
struct RulingCoefficients
{
    Scalar alpha;
    Scalar beta;
    Scalar out_of_plane; // component of a(M*) - c_L along the unit normal of span{v, w}
};

/// alpha, beta with a(M*_0) - c_L = alpha v + beta w, by Cramer's rule in the basis {v, w, v x w}.
template <typename Scalar>
RulingCoefficients<Scalar> ruling_coefficients(const Point3<Scalar>& a_at_root,
                                               const Point3<Scalar>& c_last, const Vector3<Scalar>& v,
                                               const Vector3<Scalar>& w, Scalar scale = Scalar(0))
{
    detail::check_ruling_directions(v, w);
    const Vector3<Scalar> normal = v.cross(w);
    const Vector3<Scalar> delta = a_at_root - c_last;
    const Scalar det = triple_product<Scalar>(v, w, normal);
    RulingCoefficients<Scalar> out{triple_product<Scalar>(delta, w, normal) / det,
                                   triple_product<Scalar>(v, delta, normal) / det,
                                   std::abs(delta.dot(normal)) / normal.norm()};
    if (!(scale > Scalar(0))) scale = std::max({delta.norm(), v.norm(), w.norm()});
    if (out.out_of_plane > tolerance::strip_invariant<Scalar> * scale) {
        std::ostringstream msg;
        msg << "a(M*) - c_L leaves the plane of the rulings by " << out.out_of_plane
            << "; the root does not solve the coplanarity equation";
        throw InconsistentRootError(msg.str());
    }
    return out;
}

namespace detail {

/// S(M) with a(M) - c_L = (M - u_{L-1}) S(M), accumulated in nested product form.
template <typename Scalar>
Vector3<Scalar> ruling_sum(const BSplineCurve<Scalar>& c, Scalar m)
{
    const auto& u = c.knots();
    const int n = c.degree();
    Vector3<Scalar> acc = Vector3<Scalar>::Zero();
    for (Index i = 0; i < c.last_index(); ++i) {
        acc = (m - u[i + n]) / (m - u[i]) * acc + (c.control_point(i) - c.control_point(i + 1)) / (m - u[i]);
    }
    return acc;
}

/// S(M) . normal and |S| |normal|.
template <typename Scalar>
std::pair<Scalar, Scalar> coplanarity_defect(const BSplineCurve<Scalar>& c, const Vector3<Scalar>& normal, Scalar m)
{
    const Vector3<Scalar> sum = ruling_sum(c, m);
    return {sum.dot(normal), sum.norm() * normal.norm()};
}

/**
 * A root of the expanded coplanarity numerator re-bracketed on the product
 * form within `radius` and bisected to adjacent floating-point values. Near
 * clustered knots the expanded coefficients lose the relative precision the
 * product form keeps, and candidates without a sign change whose angle to the
 * ruling plane exceeds the validity tolerance are rounding noise (nullopt).
 */
template <typename Scalar>
std::optional<Scalar> polish_root(const BSplineCurve<Scalar>& c, const Vector3<Scalar>& normal, Scalar x,
                                  Scalar radius)
{
    const auto f = [&](Scalar m) { return coplanarity_defect(c, normal, m).first; };
    Scalar step = Scalar(4) * std::numeric_limits<Scalar>::epsilon() * std::max(Scalar(1), std::abs(x));
    Scalar lo = x - step, hi = x + step;
    Scalar f_lo = f(lo), f_hi = f(hi);
    while ((f_lo < 0) == (f_hi < 0) && step < radius) {
        step = std::min(Scalar(4) * step, radius);
        lo = x - step;
        hi = x + step;
        f_lo = f(lo);
        f_hi = f(hi);
    }
    if ((f_lo < 0) == (f_hi < 0)) {
        const auto [value, size] = coplanarity_defect(c, normal, x);
        if (std::abs(value) <= tolerance::root_validity<Scalar> * size) return x;
        return std::nullopt;
    }
    for (int iter = 0; iter < 400; ++iter) {
        const Scalar mid = Scalar(0.5) * (lo + hi);
        if (!(mid > lo && mid < hi)) break;
        const Scalar f_mid = f(mid);
        if (f_mid == Scalar(0)) return mid;
        if ((f_mid < 0) == (f_lo < 0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return std::abs(f_lo) <= std::abs(f_hi) ? lo : hi;
}

} // namespace detail

struct AnchorFirst {};
struct AnchorLast {};

/// The end of the opposite curve that is prescribed: d_0 on the first ruling or d_L on the last.
template <typename Scalar>
struct RulingAnchor
{
    std::variant<AnchorFirst, AnchorLast> end;
    Point3<Scalar> point;

    static RulingAnchor first(const Point3<Scalar>& d0) { return {AnchorFirst{}, d0}; }
    static RulingAnchor last(const Point3<Scalar>& dL) { return {AnchorLast{}, dL}; }
    bool is_first() const { return std::holds_alternative<AnchorFirst>(end); }
};

template <typename Scalar>
struct Problem1Solution
{
    Polynomial<Scalar> cramer;    // monic numerator of the coplanarity determinant
    std::vector<Scalar> m_star_roots;
    Scalar chosen_root;           // M*_0
    Scalar lambda_star;           // Lambda*_0
    Scalar alpha;
    Scalar beta;
    Scalar sigma;                 // d_0 - c_0 = sigma v
    Scalar tau;                   // d_L - c_L = tau w
    DevelopableStrip<Scalar> strip;
};

namespace detail {

template <typename Scalar>
void require_clamped(const BSplineCurve<Scalar>& c)
{
    if (!c.knots().is_clamped()) {
        throw ArgumentError("boundary curve must have clamped end knots so that c(a) = c_0 and c(b) = c_L");
    }
}

/// prod_{i=0}^{L-1} (M - u_{i+n}) / (M - u_i)
template <typename Scalar>
Scalar ruling_transfer(const BSplineCurve<Scalar>& c, Scalar m)
{
    const auto& u = c.knots();
    Scalar acc = 1;
    for (Index i = 0; i < c.last_index(); ++i) acc *= (m - u[i + c.degree()]) / (m - u[i]);
    return acc;
}

/// Scalar t with p = t * dir; throws if p is not along dir.
template <typename Scalar>
Scalar coefficient_along(const Vector3<Scalar>& p, const Vector3<Scalar>& dir, Scalar scale,
                         const char* what)
{
    const Scalar t = p.dot(dir) / dir.squaredNorm();
    if ((p - t * dir).norm() > tolerance::strip_invariant<Scalar> * scale) {
        throw ArgumentError(std::string(what) + " does not lie on its prescribed ruling");
    }
    return t;
}

} // namespace detail

/**
 * Developable strip through c whose first and last rulings run along v and w.
 * The roots of the coplanarity polynomial are all reported; `root_choice`
 * indexes them in ascending order. Lambda*_0 follows from the anchored end.
 */
template <typename Scalar>
Problem1Solution<Scalar> solve_problem1(const BSplineCurve<Scalar>& c, const Vector3<Scalar>& v,
                                        const Vector3<Scalar>& w, const RulingAnchor<Scalar>& anchor,
                                        Index root_choice = 0)
{
    detail::require_clamped(c);
    detail::check_ruling_directions(v, w);
    const Index L = c.last_index();
    const auto& u = c.knots();
    const Point3<Scalar> c_first = c.control_point(0);
    const Point3<Scalar> c_last = c.control_point(L);
    const Scalar scale = std::max({c.scale(), v.norm(), w.norm()});

    const Vector3<Scalar> chord = c_last - c_first;
    if (std::abs(triple_product<Scalar>(chord, v, w)) <=
        tolerance::parallel<Scalar> * chord.norm() * v.norm() * w.norm()) {
        throw DegenerateCaseError("end rulings intersect (cone case, not constructed)",
                                  DegenerateKind::Cone);
    }

    const Polynomial<Scalar> numerator = cramer_polynomial(c, v, w);
    if (numerator.is_zero()) {
        throw DegenerateCaseError("coplanarity holds for every M* (planar data)", DegenerateKind::Planar);
    }
    const Scalar radius = tolerance::pole_guard<Scalar> * u.domain_length();
    std::vector<Scalar> roots;
    for (Scalar x : real_roots(numerator, std::span<const Scalar>(u.values()), radius).values) {
        if (const auto polished = detail::polish_root(c, Vector3<Scalar>(v.cross(w)), x, Scalar(0.5) * radius)) {
            if (roots.empty() || *polished - roots.back() > tolerance::root_dedupe<Scalar>) roots.push_back(*polished);
        }
    }
    if (roots.empty()) throw InfeasibleError("no admissible real root M* for these rulings");
    if (root_choice < 0 || root_choice >= static_cast<Index>(roots.size())) {
        throw ArgumentError("root choice " + std::to_string(root_choice) + " out of range; " +
                            std::to_string(roots.size()) + " admissible root(s)");
    }
    const Scalar m = roots[static_cast<size_t>(root_choice)];

    const Scalar hinge = m - u[L - 1];
    // a(M*) in product form
    const Point3<Scalar> a_root = c_last + hinge * detail::ruling_sum(c, m);
    const auto coeffs = ruling_coefficients<Scalar>(a_root, c_last, v, w, std::max(scale, (a_root - c_last).norm()));
    const Scalar transfer = detail::ruling_transfer(c, m);

    // gap = M* - Lambda*
    Scalar gap = 0, sigma = 0, tau = 0;
    if (anchor.is_first()) {
        sigma = detail::coefficient_along<Scalar>(anchor.point - c_first, v, scale, "anchor d0");
        if (coeffs.alpha == Scalar(0)) {
            throw InfeasibleError("alpha = 0: the first ruling length cannot be prescribed for this root");
        }
        gap = -sigma * hinge * transfer / coeffs.alpha;
        tau = coeffs.beta * gap / hinge;
    } else {
        tau = detail::coefficient_along<Scalar>(anchor.point - c_last, w, scale, "anchor dL");
        if (coeffs.beta == Scalar(0)) {
            throw InfeasibleError("beta = 0: the last ruling length cannot be prescribed for this root");
        }
        gap = tau * hinge / coeffs.beta;
        sigma = -coeffs.alpha * gap / (hinge * transfer);
    }
    if (sigma == Scalar(0)) {
        throw DegenerateCaseError("first ruling collapses (sigma = 0)", DegenerateKind::ZeroScale);
    }
    const Scalar lambda = m - gap;

    BSplineCurve<Scalar> d = detail::propagate_offsets<Scalar>(c, sigma * v, m, gap);
    return Problem1Solution<Scalar>{numerator.monic(), roots, m, lambda, coeffs.alpha, coeffs.beta,
                                    sigma, tau, DevelopableStrip<Scalar>(c, std::move(d), lambda, m)};
}

/// f(u) = slope u + intercept, the factor applied to the ruling vectors.
template <typename Scalar>
struct AffineScaling
{
    Scalar slope = 0;
    Scalar intercept = 1;

    Scalar operator()(Scalar u) const { return slope * u + intercept; }

    static AffineScaling through(Scalar a, Scalar fa, Scalar b, Scalar fb)
    {
        const Scalar slope = (fb - fa) / (b - a);
        return {slope, fa - slope * a};
    }
    static AffineScaling identity() { return {Scalar(0), Scalar(1)}; }
};

/**
 * Blossom of (1 - f(u)) c(u) + f(u) d(u), degree n+1: f is moved through
 * every argument slot and the results are averaged.
 */
template <typename Scalar>
BlossomForm<Scalar> scaled_boundary_blossom(const BSplineCurve<Scalar>& c, const BSplineCurve<Scalar>& d,
                                            const AffineScaling<Scalar>& f)
{
    if (!c.knots().approx_equal(d.knots())) {
        throw StructuralError("scaled blossom needs both curves over one knot list and degree");
    }
    const int n = c.degree();
    return {n + 1, [c, d, f, n](Scalar anchor, std::span<const Scalar> args) {
                const Index piece = c.knots().piece_of(anchor);
                std::vector<Scalar> rest(static_cast<size_t>(n));
                Point3<Scalar> sum = Point3<Scalar>::Zero();
                for (int slot = 0; slot <= n; ++slot) {
                    for (int k = 0, m = 0; k <= n; ++k) {
                        if (k != slot) rest[static_cast<size_t>(m++)] = args[static_cast<size_t>(k)];
                    }
                    const Scalar weight = f(args[static_cast<size_t>(slot)]);
                    const std::span<const Scalar> view(rest);
                    sum += weight * blossom_eval(d, piece, view) +
                           (Scalar(1) - weight) * blossom_eval(c, piece, view);
                }
                return Point3<Scalar>(sum / Scalar(n + 1));
            }};
}

/// The pair (c, d) rewritten with degree n+1, d moved along the rulings by f.
template <typename Scalar>
std::pair<BSplineCurve<Scalar>, BSplineCurve<Scalar>>
rescale_rulings(const BSplineCurve<Scalar>& c, const BSplineCurve<Scalar>& d, const AffineScaling<Scalar>& f)
{
    KnotVector<Scalar> knots = c.knots().elevated();
    BSplineCurve<Scalar> base = elevate_degree(c);
    Polygon<Scalar> moved = control_from_blossom(scaled_boundary_blossom(c, d, f), knots);
    return {std::move(base), BSplineCurve<Scalar>(std::move(knots), std::move(moved))};
}

template <typename Scalar>
struct Problem2Solution
{
    Problem1Solution<Scalar> strip_solution;
    AffineScaling<Scalar> scaling;
    BSplineCurve<Scalar> base;     // degree n+1
    BSplineCurve<Scalar> opposite; // degree n+1, through d0 and dL
    std::optional<Scalar> pinch;   // parameter where f vanishes inside the domain (tau < 0)

    RuledPatch<Scalar> patch() const { return RuledPatch<Scalar>(base, opposite); }
};

/**
 * Developable patch through c with both ends of both end rulings fixed. A
 * strip with d_0 prescribed is built first; its last ruling is then
 * shortened or stretched by the affine f with f(a) = 1, f(b) = 1/tau, which
 * raises the degree by one.
 */
template <typename Scalar>
Problem2Solution<Scalar> solve_problem2(const BSplineCurve<Scalar>& c, const Point3<Scalar>& d0,
                                        const Point3<Scalar>& dL, Index root_choice = 0)
{
    detail::require_clamped(c);
    const Vector3<Scalar> v = d0 - c.control_point(0);
    const Vector3<Scalar> w = dL - c.control_point(c.last_index());
    Problem1Solution<Scalar> first = solve_problem1(c, v, w, RulingAnchor<Scalar>::first(d0), root_choice);
    if (std::abs(first.tau) <= std::numeric_limits<Scalar>::epsilon()) {
        throw DegenerateCaseError("tau = 0: the strip's last ruling has zero length", DegenerateKind::ZeroScale);
    }
    const Scalar a = c.domain_start(), b = c.domain_end();
    const auto f = AffineScaling<Scalar>::through(a, Scalar(1), b, Scalar(1) / first.tau);
    std::optional<Scalar> pinch;
    if (first.tau < Scalar(0)) pinch = -f.intercept / f.slope;

    auto [base, opposite] = rescale_rulings(first.strip.base(), first.strip.opposite(), f);
    return Problem2Solution<Scalar>{std::move(first), f, std::move(base), std::move(opposite), pinch};
}

/// v = d_0 - c_0 that gives the collapsed patch the velocity d'(a) at its apex.
template <typename Scalar>
Vector3<Scalar> apex_direction(const BSplineCurve<Scalar>& c, const Vector3<Scalar>& apex_velocity)
{
    const auto& u = c.knots();
    const int n = c.degree();
    const Vector3<Scalar> start_velocity =
        Scalar(n) * (c.control_point(1) - c.control_point(0)) / (u[n] - u[n - 1]);
    const Vector3<Scalar> v = u.domain_length() * (apex_velocity - start_velocity);
    if (v.norm() <= tolerance::strip_invariant<Scalar> * std::max(c.scale(), apex_velocity.norm() * u.domain_length())) {
        throw DegenerateCaseError("apex velocity equals the start velocity of c; first ruling would vanish",
                                  DegenerateKind::CollapsedApex);
    }
    return v;
}

template <typename Scalar>
struct Problem3Solution
{
    Vector3<Scalar> apex_direction;
    Problem2Solution<Scalar> stretched;
    AffineScaling<Scalar> collapse; // (u - a) / (b - a)
    BSplineCurve<Scalar> base;      // degree n+2
    BSplineCurve<Scalar> opposite;  // degree n+2, opposite(a) = c_0

    RuledPatch<Scalar> patch() const { return RuledPatch<Scalar>(base, opposite); }
};

/**
 * Triangular developable patch: the first ruling collapses to c_0, the far
 * end of the last ruling is dL and the opposite curve leaves the apex with
 * velocity d'(a). Two successive ruling rescalings take the degree to n+2.
 */
template <typename Scalar>
Problem3Solution<Scalar> solve_problem3(const BSplineCurve<Scalar>& c, const Point3<Scalar>& dL,
                                        const Vector3<Scalar>& apex_velocity, Index root_choice = 0)
{
    detail::require_clamped(c);
    const Vector3<Scalar> v = apex_direction(c, apex_velocity);
    Problem2Solution<Scalar> stretched = solve_problem2<Scalar>(c, c.control_point(0) + v, dL, root_choice);
    const Scalar a = c.domain_start(), b = c.domain_end();
    const auto collapse = AffineScaling<Scalar>::through(a, Scalar(0), b, Scalar(1));
    auto [base, opposite] = rescale_rulings(stretched.base, stretched.opposite, collapse);
    return Problem3Solution<Scalar>{v, std::move(stretched), collapse, std::move(base), std::move(opposite)};
}

using Problem1Solutiond = Problem1Solution<double>;
using Problem2Solutiond = Problem2Solution<double>;
using Problem3Solutiond = Problem3Solution<double>;

} // namespace devspline
