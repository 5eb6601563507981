#pragma once

#include <vector>

#include "BSplineCurve.h"
#include "Developable.h"
#include "common.h"
#include "errors.h"

namespace devspline {

template <typename Scalar>
struct DevelopabilityReport
{
    Scalar max_residual = 0;
    Scalar argmax_u = 0;
    Index samples = 0;  // samples that entered the maximum
    Index skipped = 0;  // samples on a collapsed ruling, |d - c| below 1e-9 scale
};

/**
 * Coplanarity of c'(u), d'(u), d(u) - c(u) sampled along every piece:
 * |det| / (|c'| |d'| |d - c|), each factor floored at 1e-12 scale. Samples
 * keep 1e-9 of the piece length away from the knots.
 */
template <typename Scalar>
DevelopabilityReport<Scalar> developability_residual(const RuledPatch<Scalar>& patch,
                                                     Index samples_per_piece)
{
    if (samples_per_piece < 2) {
        throw ArgumentError("developability sampling needs at least 2 samples per piece");
    }
    const auto& knots = patch.knots();
    const Scalar scale = patch.scale();
    const Scalar floor = Scalar(1e-12) * scale;
    const Scalar collapse = Scalar(1e-9) * scale;

    DevelopabilityReport<Scalar> report;
    report.argmax_u = knots.domain_start();
    for (Index piece = 0; piece < knots.piece_count(); ++piece) {
        const auto [lo, hi] = knots.piece_interval(piece);
        const Scalar inset = Scalar(1e-9) * (hi - lo);
        for (Index k = 0; k < samples_per_piece; ++k) {
            const Scalar t = Scalar(k) / Scalar(samples_per_piece - 1);
            const Scalar u = (lo + inset) + t * ((hi - inset) - (lo + inset));
            const Vector3<Scalar> ruling = evaluate(patch.opposite(), u) - evaluate(patch.base(), u);
            if (ruling.norm() < collapse) {
                ++report.skipped;
                continue;
            }
            const Vector3<Scalar> dc = derivative_at(patch.base(), u);
            const Vector3<Scalar> dd = derivative_at(patch.opposite(), u);
            const Scalar norms = std::max(dc.norm(), floor) * std::max(dd.norm(), floor) *
                                 std::max(ruling.norm(), floor);
            const Scalar residual = std::abs(triple_product<Scalar>(dc, dd, ruling)) / norms;
            ++report.samples;
            if (residual > report.max_residual) {
                report.max_residual = residual;
                report.argmax_u = u;
            }
        }
    }
    return report;
}

/// Max distance between p(u) and q(u) at uniform samples of the shared domain.
template <typename Scalar>
Scalar curves_pointwise_equal(const BSplineCurve<Scalar>& p, const BSplineCurve<Scalar>& q, Index samples)
{
    const Scalar tol = std::max(p.knots().tolerance(), q.knots().tolerance());
    if (std::abs(p.domain_start() - q.domain_start()) > tol ||
        std::abs(p.domain_end() - q.domain_end()) > tol) {
        throw DomainError("curves are defined over different domains");
    }
    if (samples < 2) throw ArgumentError("pointwise comparison needs at least 2 samples");
    const Scalar a = p.domain_start(), b = p.domain_end();
    Scalar worst = 0;
    for (Index k = 0; k < samples; ++k) {
        const Scalar u = k + 1 == samples ? b : a + (b - a) * Scalar(k) / Scalar(samples - 1);
        worst = std::max(worst, Scalar((evaluate(p, u) - evaluate(q, u)).norm()));
    }
    return worst;
}

/// Per-cell planarity of a net that need not carry constant Lambda*, M*.
template <typename Scalar>
std::vector<Scalar> planarity_report(const RuledPatch<Scalar>& patch)
{
    return net_planarity<Scalar>(patch.base().control_points(), patch.opposite().control_points());
}

template <typename Scalar>
std::vector<Scalar> planarity_report(const DevelopableStrip<Scalar>& strip)
{
    return planarity_report(strip.patch());
}

} // namespace devspline
