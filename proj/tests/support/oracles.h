#pragma once

// Reference computations that share no code path with the library: basis
// functions by the Cox-de Boor recursion, central differences, the control
// recursion summed in closed form, and a seeded random curve generator.

#include <devspline/devspline.h>

#include <random>
#include <vector>

namespace oracle {

using devspline::Index;
using Vec3 = Eigen::Vector3d;

/// Curve value from B-spline basis functions. The polar-form knot list
/// u_0..u_K is padded with one phantom knot at each end.
inline Vec3 cox_de_boor(int n, const std::vector<double>& u, const devspline::Polygon<double>& control,
                        double x)
{
    std::vector<double> t;
    t.push_back(u.front() - 1.0);
    t.insert(t.end(), u.begin(), u.end());
    t.push_back(u.back() + 1.0);
    const Index count = control.rows();
    // span s with t_s <= x < t_{s+1}, clamped to the last nonempty span at the right end
    Index s = n;
    for (Index j = n; j < count; ++j) {
        if (t[static_cast<size_t>(j)] < t[static_cast<size_t>(j + 1)] && t[static_cast<size_t>(j)] <= x) s = j;
    }
    std::vector<double> basis(t.size(), 0.0);
    basis[static_cast<size_t>(s)] = 1.0;
    for (int p = 1; p <= n; ++p) {
        std::vector<double> next(t.size(), 0.0);
        for (size_t i = 0; i + p + 1 < t.size(); ++i) {
            double value = 0.0;
            const double left = t[i + p] - t[i];
            const double right = t[i + p + 1] - t[i + 1];
            if (left > 0) value += (x - t[i]) / left * basis[i];
            if (right > 0) value += (t[i + p + 1] - x) / right * basis[i + 1];
            next[i] = value;
        }
        basis = next;
    }
    Vec3 p = Vec3::Zero();
    for (Index i = 0; i < count; ++i) p += basis[static_cast<size_t>(i)] * control.row(i).transpose();
    return p;
}

inline Vec3 cox_de_boor(const devspline::BSplineCurved& curve, double x)
{
    return cox_de_boor(curve.degree(), curve.knots().values(), curve.control_points(), x);
}

/// Central difference, one-sided near the domain ends.
inline Vec3 finite_difference(const devspline::BSplineCurved& curve, double x, double h = 1e-6)
{
    const double a = curve.domain_start(), b = curve.domain_end();
    const double lo = std::max(a, x - h), hi = std::min(b, x + h);
    return (cox_de_boor(curve, hi) - cox_de_boor(curve, lo)) / (hi - lo);
}

/**
 * a(M) from the control recursion: with e_i = d_i - c_i,
 *   e_{i+1} = (M - Lambda)(c_i - c_{i+1})/(M - u_i) + e_i (M - u_{i+n})/(M - u_i),
 * so the part of e_L not carried by e_0 is (M - Lambda) S(M) and
 * a(M) = c_L + (M - u_{L-1}) S(M).
 */
inline Vec3 a_from_recursion(const devspline::BSplineCurved& c, double m)
{
    const auto& u = c.knots();
    const int n = c.degree();
    const Index L = c.last_index();
    Vec3 s = Vec3::Zero();
    for (Index i = 0; i < L; ++i) {
        double carry = 1.0;
        for (Index k = i + 1; k < L; ++k) carry *= (m - u[k + n]) / (m - u[k]);
        s += carry * (c.control_point(i) - c.control_point(i + 1)) / (m - u[i]);
    }
    return c.control_point(L) + (m - u[L - 1]) * s;
}

struct RandomCurves
{
    explicit RandomCurves(unsigned seed) : rng(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
    Vec3 point(double r = 5.0) { return Vec3(uniform(-r, r), uniform(-r, r), uniform(-r, r)); }

    /// Clamped (or not) knot list over [0, 1] with the given number of pieces.
    /// Interior multiplicity is drawn up to `max_multiplicity`.
    std::vector<double> knots(int n, int pieces, bool clamped = true, int max_multiplicity = 1)
    {
        std::vector<double> breaks;
        while (static_cast<int>(breaks.size()) < pieces - 1) {
            const double x = uniform(0.08, 0.92);
            bool spaced = true;
            for (double b : breaks) spaced = spaced && std::abs(b - x) > 0.05;
            if (spaced) breaks.push_back(x);
        }
        std::sort(breaks.begin(), breaks.end());
        std::vector<double> u;
        for (int k = 0; k < n; ++k) u.push_back(clamped ? 0.0 : -0.1 * (n - k - 1));
        for (double b : breaks) {
            const int mult = integer(1, std::max(1, std::min(max_multiplicity, n)));
            for (int k = 0; k < mult; ++k) u.push_back(b);
        }
        for (int k = 0; k < n; ++k) u.push_back(clamped ? 1.0 : 1.0 + 0.1 * k);
        std::sort(u.begin(), u.end());
        return u;
    }

    devspline::BSplineCurved curve(int n, int pieces, bool clamped = true, int max_multiplicity = 1)
    {
        std::vector<double> u = knots(n, pieces, clamped, max_multiplicity);
        const Index count = static_cast<Index>(u.size()) - n + 1;
        devspline::Polygon<double> control(count, 3);
        for (Index i = 0; i < count; ++i) control.row(i) = point().transpose();
        return devspline::BSplineCurved(devspline::KnotVectord(u, n), control);
    }

    std::mt19937 rng;
};

} // namespace oracle
