#include <catch2/catch_amalgamated.hpp>

#include <devspline/devspline.h>

#include "support/oracles.h"
#include "support/reference_data.h"

using namespace devspline;
using Catch::Matchers::ContainsSubstring;
using Vec3 = Eigen::Vector3d;

namespace {

BSplineCurved insert_all(BSplineCurved curve, std::initializer_list<double> knots)
{
    for (double u : knots) curve = insert_knot(curve, u);
    return curve;
}

} // namespace

TEST_CASE("KnotVector layout", "[spline_core]")
{
    const KnotVectord u({0, 0, 0, 0.3, 0.7, 1, 1, 1}, 3);
    REQUIRE(u.control_count() == 6);
    REQUIRE(u.last_index() == 5);
    REQUIRE(u.domain_start() == 0);
    REQUIRE(u.domain_end() == 1);
    REQUIRE(u.piece_count() == 3);
    REQUIRE(u.is_clamped());
    REQUIRE(u.piece_interval(1) == std::pair<double, double>(0.3, 0.7));
    REQUIRE(u.multiplicity(0.0) == 3);
    REQUIRE(u.multiplicity(0.3) == 1);

    SECTION("right-continuous piece lookup")
    {
        REQUIRE(u.piece_of(0.0) == 0);
        REQUIRE(u.piece_of(0.3) == 1);
        REQUIRE(u.piece_of(0.7) == 2);
        REQUIRE(u.piece_of(1.0) == 2);
        REQUIRE_THROWS_AS(u.piece_of(1.5), DomainError);
        REQUIRE_THROWS_AS(u.piece_of(-0.1), DomainError);
    }

    SECTION("elevated list adds one copy of each distinct domain knot")
    {
        REQUIRE(u.elevated().values() == reference::cubic::elevated_knots);
        REQUIRE(u.elevated().degree() == 4);
    }

    SECTION("unclamped list")
    {
        const KnotVectord w({-0.2, -0.1, 0, 0.5, 1, 1.1, 1.2}, 3);
        REQUIRE_FALSE(w.is_clamped());
        REQUIRE(w.domain_start() == 0);
        REQUIRE(w.domain_end() == 1);
        REQUIRE(w.piece_count() == 2);
    }
}

TEST_CASE("KnotVector rejects malformed lists", "[spline_core]")
{
    REQUIRE_THROWS_AS(KnotVectord({0, 0, 1, 1}, 0), MalformedKnotsError);
    REQUIRE_THROWS_AS(KnotVectord({0, 0, 1}, 2), MalformedKnotsError);
    REQUIRE_THROWS_WITH(KnotVectord({0, 0, 0.5, 0.4, 1, 1}, 3), ContainsSubstring("u_3 = 0.4"));
    REQUIRE_THROWS_AS(KnotVectord({0, 0, std::nan(""), 1}, 2), MalformedKnotsError);
}

TEST_CASE("BSplineCurve construction", "[spline_core]")
{
    const auto control = reference::polygon({{0, 0, 0}, {3, 3, 0}, {4, 3, 0}});

    SECTION("polar and conventional knot lists give the same curve")
    {
        const auto polar = BSplineCurved::from_knot_list(2, {0, 0, 1, 1}, control);
        const auto conventional = BSplineCurved::from_knot_list(2, {0, 0, 0, 1, 1, 1}, control);
        REQUIRE(polar.knots().values() == conventional.knots().values());
        REQUIRE((evaluate(polar, 0.4) - evaluate(conventional, 0.4)).norm() == 0.0);
    }
    SECTION("count mismatch names both counts")
    {
        REQUIRE_THROWS_WITH(BSplineCurved::from_knot_list(2, {0, 0, 0.5, 1, 1}, control),
                            ContainsSubstring("needs 4 knots"));
        REQUIRE_THROWS_AS(BSplineCurved(KnotVectord({0, 0, 1, 1}, 2), reference::polygon({{0, 0, 0}})),
                          ArgumentError);
    }
    SECTION("empty and non-finite control polygons")
    {
        REQUIRE_THROWS_AS(BSplineCurved::from_knot_list(2, {0, 0, 1, 1}, Polygon<double>(0, 3)), ArgumentError);
        auto bad = control;
        bad(1, 2) = std::numeric_limits<double>::infinity();
        REQUIRE_THROWS_AS(BSplineCurved::from_knot_list(2, {0, 0, 1, 1}, bad), ArgumentError);
    }
}

TEST_CASE("evaluate agrees with the basis-function oracle", "[spline_core]")
{
    const BSplineCurved c = reference::cubic::base();
    REQUIRE((evaluate(c, 0.0) - c.control_point(0)).norm() < 1e-15);
    REQUIRE((evaluate(c, 1.0) - c.control_point(5)).norm() < 1e-15);
    for (int k = 0; k <= 100; ++k) {
        const double u = k / 100.0;
        REQUIRE((evaluate(c, u) - oracle::cox_de_boor(c, u)).norm() < 1e-13);
    }
    REQUIRE((evaluate(c, 0.3) - Vec3(3.48, 2.61, 0)).cwiseAbs().maxCoeff() < 0.01);

    SECTION("random curves, clamped and unclamped")
    {
        oracle::RandomCurves gen(7);
        for (int k = 0; k < 40; ++k) {
            const BSplineCurved r = gen.curve(1 + k % 4, 1 + k % 5, k % 2 == 0, 2);
            for (int j = 0; j <= 20; ++j) {
                const double u = j / 20.0;
                REQUIRE((evaluate(r, u) - oracle::cox_de_boor(r, u)).norm() < 1e-12 * r.scale());
            }
        }
    }
}

TEST_CASE("blossom values", "[spline_core]")
{
    const BSplineCurved c = reference::cubic::base();

    SECTION("control points are blossoms at consecutive knots")
    {
        const auto& u = c.knots();
        for (Index i = 0; i <= c.last_index(); ++i) {
            const Index piece = u.piece_of(std::clamp(u[std::min<Index>(i + 1, u.size() - 1)], 0.0, 0.999));
            const std::vector<double> args{u[i], u[i + 1], u[i + 2]};
            INFO("control point " << i);
            REQUIRE((blossom_eval(c, piece, std::span<const double>(args)) - c.control_point(i)).norm() < 1e-13);
        }
    }
    SECTION("reference auxiliary values")
    {
        for (const auto& b : reference::cubic::c_blossoms) {
            const Vec3 value = blossom_eval(c, b.piece, std::span<const double>(b.args));
            REQUIRE((value - b.value).cwiseAbs().maxCoeff() < 0.01);
        }
    }
    SECTION("a blossom at a shared knot agrees across adjacent pieces")
    {
        REQUIRE((blossom_eval(c, 0, {0.3, 0.3, 0.3}) - blossom_eval(c, 1, {0.3, 0.3, 0.3})).norm() < 1e-13);
        REQUIRE((blossom_eval(c, 1, {0.7, 0.7, 0.7}) - blossom_eval(c, 2, {0.7, 0.7, 0.7})).norm() < 1e-13);
    }
    SECTION("argument count and piece range are checked")
    {
        REQUIRE_THROWS_AS(blossom_eval(c, 0, {0.1, 0.2}), ArgumentError);
        REQUIRE_THROWS_AS(blossom_eval(c, 3, {0.1, 0.2, 0.3}), ArgumentError);
    }
}

TEST_CASE("derivative", "[spline_core]")
{
    SECTION("degree one is the chord slope")
    {
        const BSplineCurved line(KnotVectord({0, 2}, 1), reference::polygon({{1, 1, 1}, {5, 3, 1}}));
        REQUIRE((derivative_at(line, 0.7) - Vec3(2, 1, 0)).norm() < 1e-15);
        REQUIRE((evaluate(line, 1.0) - Vec3(3, 2, 1)).norm() < 1e-15);
    }
    SECTION("end derivative of a clamped curve")
    {
        const BSplineCurved c = reference::cubic::base();
        // n (c_1 - c_0) / (u_3 - u_2)
        REQUIRE((derivative_at(c, 0.0) - 3.0 * Vec3(2, 3, 0) / 0.3).norm() < 1e-12);
    }
    SECTION("matches central differences")
    {
        oracle::RandomCurves gen(3);
        for (int k = 0; k < 30; ++k) {
            const BSplineCurved r = gen.curve(1 + k % 4, 1 + k % 4, k % 2 == 0, 1);
            for (double u : {0.01, 0.13, 0.5, 0.77, 0.99}) {
                if (r.knots().multiplicity(u) > 0) continue;
                const Vec3 fd = oracle::finite_difference(r, u);
                INFO("case " << k << " u " << u);
                REQUIRE((derivative_at(r, u) - fd).norm() < 1e-5 * std::max(1.0, fd.norm()));
            }
        }
    }
}

TEST_CASE("knot insertion", "[spline_core]")
{
    const BSplineCurved c = reference::cubic::base();

    SECTION("Bezier split reproduces the reference polygon")
    {
        const BSplineCurved split = insert_all(c, {0.3, 0.3, 0.7, 0.7});
        REQUIRE(split.last_index() == 9);
        REQUIRE(reference::max_coordinate_error(split.control_points(), reference::cubic::split_c) < 0.01);
        REQUIRE(curves_pointwise_equal(split, c, 200) < 1e-12 * c.scale());
    }
    SECTION("rejections")
    {
        REQUIRE_THROWS_AS(insert_knot(c, 0.0), InvalidInsertionError);
        REQUIRE_THROWS_AS(insert_knot(c, 1.0), InvalidInsertionError);
        REQUIRE_THROWS_AS(insert_knot(c, 1.2), InvalidInsertionError);
        const BSplineCurved full = insert_all(c, {0.3, 0.3});
        REQUIRE_THROWS_WITH(insert_knot(full, 0.3), ContainsSubstring("multiplicity"));
    }
    SECTION("unclamped curve")
    {
        const BSplineCurved r(KnotVectord({-0.2, -0.1, 0, 0.5, 1, 1.1, 1.2}, 3),
                              reference::polygon({{0, 0, 0}, {1, 2, 0}, {2, 2, 1}, {3, 0, 1}, {4, 1, 2}}));
        const BSplineCurved refined = insert_knot(r, 0.25);
        for (int k = 0; k <= 50; ++k) {
            const double u = k / 50.0;
            REQUIRE((evaluate(refined, u) - oracle::cox_de_boor(r, u)).norm() < 1e-13);
        }
    }
}

TEST_CASE("degree elevation", "[spline_core]")
{
    SECTION("quadratic Bezier")
    {
        const BSplineCurved c = reference::quadratic::base();
        const BSplineCurved e = elevate_degree(c);
        REQUIRE(e.degree() == 3);
        REQUIRE(e.knots().values() == std::vector<double>{0, 0, 0, 1, 1, 1});
        REQUIRE((e.control_point(1) - reference::quadratic::elevated_c1).norm() < 1e-14);
        REQUIRE(curves_pointwise_equal(e, c, 200) < 1e-12 * c.scale());
    }
    SECTION("cubic with inner knots")
    {
        const BSplineCurved c = reference::cubic::base();
        const BSplineCurved e = elevate_degree(c);
        REQUIRE(e.knots().values() == reference::cubic::elevated_knots);
        REQUIRE(reference::max_coordinate_error(e.control_points(), reference::cubic::elevated_c) < 0.01);
        REQUIRE(curves_pointwise_equal(e, c, 200) < 1e-12 * c.scale());
        const BSplineCurved split = insert_all(e, {0.3, 0.3, 0.7, 0.7});
        REQUIRE(reference::max_coordinate_error(split.control_points(), reference::cubic::elevated_split_c) < 0.01);
        for (const auto& b : reference::cubic::elevated_c_blossoms) {
            REQUIRE((blossom_eval(e, b.piece, std::span<const double>(b.args)) - b.value).cwiseAbs().maxCoeff() < 0.01);
        }
    }
}

TEST_CASE("control_from_blossom reproduces the curve", "[spline_core]")
{
    oracle::RandomCurves gen(5);
    for (int k = 0; k < 30; ++k) {
        const BSplineCurved r = gen.curve(1 + k % 4, 1 + k % 4, k % 3 != 0, 1 + k % 3);
        const Polygon<double> again = control_from_blossom(curve_blossom(r), r.knots());
        REQUIRE((again - r.control_points()).cwiseAbs().maxCoeff() < 1e-12 * r.scale());
    }
    const BSplineCurved c = reference::cubic::base();
    REQUIRE_THROWS_AS(control_from_blossom(curve_blossom(c), c.knots().elevated()), ArgumentError);
}
