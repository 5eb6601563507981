#include <catch2/catch_amalgamated.hpp>

#include <devspline/devspline.h>

#include "support/reference_data.h"

using namespace devspline;
using Vec3 = Eigen::Vector3d;

TEST_CASE("developability residual", "[verification]")
{
    const BSplineCurved c = reference::cubic::base();

    SECTION("a strip is developable to rounding")
    {
        const auto s = solve_problem1<double>(c, reference::cubic::v, reference::cubic::w,
                                              RulingAnchor<double>::first(Vec3(0, 0, 2)), 0);
        const auto report = developability_residual(s.strip.patch(), 100);
        REQUIRE(report.max_residual < 1e-12);
        REQUIRE(report.samples == 300);
        REQUIRE(report.skipped == 0);
    }
    SECTION("a translated copy is a cylinder, hence developable")
    {
        const BSplineCurved d(c.knots(), c.control_points().rowwise() + Eigen::RowVector3d(0, 0, 1));
        REQUIRE(developability_residual(RuledPatchd(c, d), 20).max_residual < 1e-14);
    }
    SECTION("a twisted patch is not")
    {
        Polygon<double> twisted = c.control_points().rowwise() + Eigen::RowVector3d(0, 0, 1);
        twisted(2, 0) += 1.0;
        const auto report = developability_residual(RuledPatchd(c, BSplineCurved(c.knots(), twisted)), 50);
        REQUIRE(report.max_residual > 1e-3);
        REQUIRE(report.argmax_u >= 0.0);
        REQUIRE(report.argmax_u <= 1.0);
    }
    SECTION("collapsed rulings are skipped")
    {
        const auto report = developability_residual(RuledPatchd(c, c), 10);
        REQUIRE(report.skipped == 30);
        REQUIRE(report.max_residual == 0.0);
    }
    SECTION("needs two samples per piece")
    {
        REQUIRE_THROWS_AS(developability_residual(RuledPatchd(c, c), 1), ArgumentError);
    }
}

TEST_CASE("curves_pointwise_equal", "[verification]")
{
    const BSplineCurved c = reference::cubic::base();
    REQUIRE(curves_pointwise_equal(c, c, 10) == 0.0);
    REQUIRE(curves_pointwise_equal(elevate_degree(c), insert_knot(c, 0.5), 200) < 1e-13);
    const BSplineCurved moved(c.knots(), c.control_points().rowwise() + Eigen::RowVector3d(0.5, 0, 0));
    REQUIRE(curves_pointwise_equal(c, moved, 10) == Catch::Approx(0.5));
    const BSplineCurved other(KnotVectord({0, 0, 0, 2, 2, 2}, 3), reference::polygon({{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {3, 0, 0}}));
    REQUIRE_THROWS_AS(curves_pointwise_equal(c, other, 10), DomainError);
}

TEST_CASE("planarity report", "[verification]")
{
    const BSplineCurved c = reference::quadratic::base();
    const BSplineCurved d = propagate_polygon(c, reference::quadratic::d0, reference::quadratic::lambda_star,
                                              reference::quadratic::m_star);
    const DevelopableStripd strip(c, d, reference::quadratic::lambda_star, reference::quadratic::m_star);
    const auto cells = planarity_report(strip);
    REQUIRE(cells.size() == 2);
    for (double r : cells) REQUIRE(r < 1e-15);
    const auto elevated = planarity_report(RuledPatchd(elevate_degree(c), elevate_degree(d)));
    REQUIRE(elevated.size() == 3);
    REQUIRE(elevated[1] > 1e-3);
}
