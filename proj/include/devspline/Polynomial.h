#pragma once

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "errors.h"

namespace devspline {

/// Real polynomial, coefficients in ascending degree.
template <typename Scalar>
class Polynomial
{
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Scalar> coefficients) : coefficients_(std::move(coefficients))
    {
        trim_exact_zeros();
    }
    Polynomial(std::initializer_list<Scalar> coefficients)
        : Polynomial(std::vector<Scalar>(coefficients))
    {}

    static Polynomial constant(Scalar value) { return Polynomial({value}); }
    /// x - root
    static Polynomial linear_factor(Scalar root) { return Polynomial({-root, Scalar(1)}); }

    const std::vector<Scalar>& coefficients() const { return coefficients_; }
    bool is_zero() const { return coefficients_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coefficients_.size()) - 1; }
    Scalar leading() const { return is_zero() ? Scalar(0) : coefficients_.back(); }
    Scalar coefficient(int k) const
    {
        return k >= 0 && k <= degree() ? coefficients_[static_cast<size_t>(k)] : Scalar(0);
    }

    Scalar operator()(Scalar x) const
    {
        Scalar acc = 0;
        for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    /// Sum of |a_k| |x|^k, the magnitude scale of an evaluation at x.
    Scalar magnitude_at(Scalar x) const
    {
        Scalar acc = 0;
        const Scalar ax = std::abs(x);
        for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) {
            acc = acc * ax + std::abs(*it);
        }
        return acc;
    }

    Polynomial derivative() const
    {
        if (degree() < 1) return Polynomial();
        std::vector<Scalar> out(coefficients_.size() - 1);
        for (size_t k = 1; k < coefficients_.size(); ++k) out[k - 1] = Scalar(k) * coefficients_[k];
        return Polynomial(std::move(out));
    }

    /// Scaled to a unit leading coefficient.
    Polynomial monic() const
    {
        if (is_zero()) return *this;
        std::vector<Scalar> out(coefficients_);
        const Scalar lead = out.back();
        for (auto& a : out) a /= lead;
        out.back() = Scalar(1);
        return Polynomial(std::move(out));
    }

    /// Drops leading coefficients below `relative` times the largest magnitude.
    Polynomial trimmed(Scalar relative) const
    {
        Scalar biggest = 0;
        for (Scalar a : coefficients_) biggest = std::max(biggest, std::abs(a));
        std::vector<Scalar> out(coefficients_);
        while (!out.empty() && std::abs(out.back()) <= relative * biggest) out.pop_back();
        return Polynomial(std::move(out));
    }

    Polynomial& operator+=(const Polynomial& other)
    {
        if (other.coefficients_.size() > coefficients_.size()) {
            coefficients_.resize(other.coefficients_.size(), Scalar(0));
        }
        for (size_t k = 0; k < other.coefficients_.size(); ++k) coefficients_[k] += other.coefficients_[k];
        trim_exact_zeros();
        return *this;
    }
    Polynomial& operator-=(const Polynomial& other) { return *this += other * Scalar(-1); }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b)
    {
        if (a.is_zero() || b.is_zero()) return Polynomial();
        std::vector<Scalar> out(a.coefficients_.size() + b.coefficients_.size() - 1, Scalar(0));
        for (size_t i = 0; i < a.coefficients_.size(); ++i) {
            for (size_t j = 0; j < b.coefficients_.size(); ++j) {
                out[i + j] += a.coefficients_[i] * b.coefficients_[j];
            }
        }
        return Polynomial(std::move(out));
    }
    friend Polynomial operator*(Polynomial a, Scalar s)
    {
        for (auto& c : a.coefficients_) c *= s;
        a.trim_exact_zeros();
        return a;
    }
    friend Polynomial operator*(Scalar s, Polynomial a) { return std::move(a) * s; }

private:
    void trim_exact_zeros()
    {
        while (!coefficients_.empty() && coefficients_.back() == Scalar(0)) coefficients_.pop_back();
    }

    std::vector<Scalar> coefficients_;
};

/// Real roots of a polynomial. `identically_zero` signals that every value is a root.
template <typename Scalar>
struct RealRoots
{
    std::vector<Scalar> values;
    bool identically_zero = false;
};

namespace detail {

/// Root of p in [lo, hi] given a strict sign change; Newton steps that leave
/// the bracket fall back to bisection.
template <typename Scalar>
Scalar refine_bracketed_root(const Polynomial<Scalar>& p, const Polynomial<Scalar>& dp, Scalar lo,
                             Scalar hi)
{
    Scalar f_lo = p(lo);
    Scalar x = Scalar(0.5) * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        const Scalar fx = p(x);
        if (fx == Scalar(0)) return x;
        if ((fx < 0) == (f_lo < 0)) {
            lo = x;
            f_lo = fx;
        } else {
            hi = x;
        }
        const Scalar tol =
            std::max(Scalar(1e-12), Scalar(4) * std::numeric_limits<Scalar>::epsilon() * std::abs(x));
        if (hi - lo <= tol) break;
        const Scalar slope = dp(x);
        Scalar next = slope != Scalar(0) ? x - fx / slope : lo - Scalar(1);
        if (!(next > lo && next < hi)) next = Scalar(0.5) * (lo + hi);
        if (std::abs(next - x) <= tol) {
            x = next;
            break;
        }
        x = next;
    }
    return x;
}

template <typename Scalar>
std::vector<Scalar> isolate_real_roots(const Polynomial<Scalar>& p)
{
    const int deg = p.degree();
    if (deg < 1) return {};
    if (deg == 1) return {-p.coefficient(0) / p.coefficient(1)};

    // Cauchy bound: every root lies in (-bound, bound).
    Scalar bound = 0;
    for (int k = 0; k < deg; ++k) bound = std::max(bound, std::abs(p.coefficient(k) / p.leading()));
    bound += Scalar(1);

    const Polynomial<Scalar> dp = p.derivative();
    std::vector<Scalar> breaks{-bound};
    for (Scalar x : isolate_real_roots(dp)) {
        if (x > -bound && x < bound) breaks.push_back(x);
    }
    breaks.push_back(bound);

    const Scalar eps = std::numeric_limits<Scalar>::epsilon();
    std::vector<Scalar> roots;
    for (size_t k = 0; k + 1 < breaks.size(); ++k) {
        const Scalar lo = breaks[k], hi = breaks[k + 1];
        const Scalar f_lo = p(lo), f_hi = p(hi);
        // Critical points where p vanishes to rounding are multiple roots.
        if (k > 0 && std::abs(f_lo) <= 64 * eps * p.magnitude_at(lo)) {
            roots.push_back(lo);
            continue;
        }
        if ((f_lo < 0) != (f_hi < 0) && f_hi != Scalar(0)) {
            roots.push_back(refine_bracketed_root(p, dp, lo, hi));
        }
    }
    return roots;
}

} // namespace detail

/**
 * All real roots of p, ascending, merged when closer than 1e-9, and with any
 * root within `exclusion_radius` of an exclusion value removed.
 */
template <typename Scalar>
RealRoots<Scalar> real_roots(const Polynomial<Scalar>& p, std::span<const Scalar> exclusions = {},
                             Scalar exclusion_radius = Scalar(0))
{
    if (p.is_zero()) return {{}, true};
    std::vector<Scalar> raw = detail::isolate_real_roots(p);
    std::sort(raw.begin(), raw.end());
    RealRoots<Scalar> result;
    for (Scalar x : raw) {
        if (!result.values.empty() && x - result.values.back() <= tolerance::root_dedupe<Scalar>) continue;
        const bool excluded = std::any_of(exclusions.begin(), exclusions.end(), [&](Scalar e) {
            return std::abs(x - e) <= exclusion_radius;
        });
        if (!excluded) result.values.push_back(x);
    }
    return result;
}

using Polynomiald = Polynomial<double>;

} // namespace devspline
