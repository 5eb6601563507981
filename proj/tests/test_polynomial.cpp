#include <catch2/catch_amalgamated.hpp>

#include <devspline/devspline.h>

#include <random>

using namespace devspline;

namespace {

Polynomiald from_roots(std::initializer_list<double> roots, double lead = 1.0)
{
    Polynomiald p = Polynomiald::constant(lead);
    for (double r : roots) p = p * Polynomiald::linear_factor(r);
    return p;
}

} // namespace

TEST_CASE("polynomial arithmetic", "[polynomial]")
{
    const Polynomiald p{1, -3, 2}; // 2x^2 - 3x + 1
    REQUIRE(p.degree() == 2);
    REQUIRE(p(2.0) == 3.0);
    REQUIRE(p.derivative().coefficients() == std::vector<double>{-3, 4});
    REQUIRE(p.monic().coefficients() == std::vector<double>{0.5, -1.5, 1});
    REQUIRE((p - p).is_zero());
    REQUIRE((p * Polynomiald{0, 1}).degree() == 3);
    REQUIRE(Polynomiald{1, 2, 1e-20}.trimmed(1e-12).degree() == 1);
    REQUIRE(Polynomiald{0, 0}.is_zero());
    REQUIRE(Polynomiald().leading() == 0.0);
}

TEST_CASE("real roots", "[polynomial]")
{
    SECTION("simple roots in ascending order")
    {
        const auto r = real_roots(from_roots({3.0, -2.0, 0.5}, -4.0));
        REQUIRE_FALSE(r.identically_zero);
        REQUIRE(r.values.size() == 3);
        REQUIRE(r.values[0] == Catch::Approx(-2.0).margin(1e-12));
        REQUIRE(r.values[1] == Catch::Approx(0.5).margin(1e-12));
        REQUIRE(r.values[2] == Catch::Approx(3.0).margin(1e-12));
    }
    SECTION("no real roots")
    {
        REQUIRE(real_roots(Polynomiald{1, 0, 1}).values.empty());
        REQUIRE(real_roots(Polynomiald{5}).values.empty());
    }
    SECTION("double and triple roots are reported once")
    {
        const auto r = real_roots(from_roots({1.0, 1.0, -0.5}));
        REQUIRE(r.values.size() == 2);
        REQUIRE(r.values[1] == Catch::Approx(1.0).margin(1e-7));
        const auto t = real_roots(from_roots({2.0, 2.0, 2.0, 0.0}));
        REQUIRE(t.values.size() == 2);
        REQUIRE(t.values[0] == Catch::Approx(0.0).margin(1e-12));
        REQUIRE(t.values[1] == Catch::Approx(2.0).margin(1e-4));
    }
    SECTION("roots near exclusions are removed")
    {
        const std::vector<double> knots{0.0, 0.3, 1.0};
        const auto r = real_roots(from_roots({0.3, -1.5}), std::span<const double>(knots), 1e-6);
        REQUIRE(r.values.size() == 1);
        REQUIRE(r.values[0] == Catch::Approx(-1.5));
    }
    SECTION("identically zero")
    {
        REQUIRE(real_roots(Polynomiald()).identically_zero);
    }
    SECTION("the strip quartic")
    {
        // x^4 + 6.2 x^3 - 12.3 x^2 + 9.3 x - 2.1
        const auto r = real_roots(Polynomiald{-2.1, 9.3, -12.3, 6.2, 1});
        REQUIRE(r.values.size() == 2);
        REQUIRE(r.values[0] == Catch::Approx(-7.90828).margin(1e-5));
        REQUIRE(r.values[1] == Catch::Approx(0.373439).margin(1e-5));
    }
    SECTION("random factored polynomials")
    {
        std::mt19937 rng(21);
        std::uniform_real_distribution<double> dist(-5, 5);
        for (int k = 0; k < 200; ++k) {
            std::vector<double> roots;
            while (roots.size() < static_cast<size_t>(1 + k % 5)) {
                const double x = dist(rng);
                bool spaced = true;
                for (double y : roots) spaced = spaced && std::abs(x - y) > 0.05;
                if (spaced) roots.push_back(x);
            }
            Polynomiald p = Polynomiald::constant(dist(rng) + 6.0);
            for (double x : roots) p = p * Polynomiald::linear_factor(x);
            // an irreducible quadratic factor adds no roots
            if (k % 2) p = p * Polynomiald{1, 0.5, 1};
            std::sort(roots.begin(), roots.end());
            const auto found = real_roots(p).values;
            REQUIRE(found.size() == roots.size());
            for (size_t i = 0; i < roots.size(); ++i) REQUIRE(std::abs(found[i] - roots[i]) < 1e-9);
        }
    }
}
