#include "json_support.h"

#include <cstdio>
#include <sstream>

namespace devspline::io {

SolveOutcome solve(const ProblemSpec& spec)
{
    const BSplineCurved curve = build_curve(spec.curve);
    switch (spec.kind) {
    case ProblemKind::Problem1: {
        const auto anchor = spec.anchor.value().first ? RulingAnchor<double>::first(spec.anchor->point)
                                                      : RulingAnchor<double>::last(spec.anchor->point);
        auto s = solve_problem1<double>(curve, spec.v.value(), spec.w.value(), anchor, spec.root_choice);
        RuledPatchd surface = s.strip.patch();
        return SolveOutcome{spec.kind, spec.root_choice, s.cramer, s.m_star_roots, s.chosen_root, s.lambda_star,
                            s.alpha, s.beta, s.sigma, s.tau, std::nullopt, std::nullopt, std::move(s.strip),
                            std::move(surface)};
    }
    case ProblemKind::Problem2: {
        auto s = solve_problem2<double>(curve, spec.d0.value(), spec.dL.value(), spec.root_choice);
        auto& p1 = s.strip_solution;
        return SolveOutcome{spec.kind, spec.root_choice, p1.cramer, p1.m_star_roots, p1.chosen_root,
                            p1.lambda_star, p1.alpha, p1.beta, p1.sigma, p1.tau, s.pinch, std::nullopt,
                            std::move(p1.strip), s.patch()};
    }
    case ProblemKind::Problem3: {
        auto s = solve_problem3<double>(curve, spec.dL.value(), spec.apex_velocity.value(), spec.root_choice);
        auto& p1 = s.stretched.strip_solution;
        return SolveOutcome{spec.kind, spec.root_choice, p1.cramer, p1.m_star_roots, p1.chosen_root,
                            p1.lambda_star, p1.alpha, p1.beta, p1.sigma, p1.tau, s.stretched.pinch,
                            s.apex_direction, std::move(p1.strip), s.patch()};
    }
    }
    throw ArgumentError("unknown problem kind");
}

ResidualSummary summarize(const RuledPatchd& surface, const std::optional<DevelopableStripd>& strip,
                          int samples_per_piece)
{
    ResidualSummary summary;
    const auto dev = developability_residual(surface, samples_per_piece);
    summary.developability_max = dev.max_residual;
    summary.developability_argmax_u = dev.argmax_u;
    summary.developability_skipped = dev.skipped;
    const auto surface_cells = planarity_report(surface);
    for (double r : surface_cells) summary.surface_planarity_max = std::max(summary.surface_planarity_max, r);
    if (strip) {
        const auto cells = planarity_report(*strip);
        for (size_t i = 0; i < cells.size(); ++i) {
            if (cells[i] > summary.strip_planarity_max) {
                summary.strip_planarity_max = cells[i];
                summary.strip_planarity_worst_cell = static_cast<Index>(i);
            }
        }
        summary.control_relation_max = verify_control_relation(*strip);
    }
    return summary;
}

namespace {

nlohmann::ordered_json patch_json(const BSplineCurved& base, const BSplineCurved& opposite)
{
    nlohmann::ordered_json out;
    out["degree"] = base.degree();
    out["knots"] = base.knots().values();
    out["base"] = detail::polygon_json(base.control_points());
    out["opposite"] = detail::polygon_json(opposite.control_points());
    return out;
}

nlohmann::ordered_json parameters_json(const SolveOutcome& o)
{
    nlohmann::ordered_json out;
    out["root_choice"] = o.root_choice;
    out["m_star"] = o.m_star;
    out["lambda_star"] = o.lambda_star;
    out["alpha"] = o.alpha;
    out["beta"] = o.beta;
    out["sigma"] = o.sigma;
    out["tau"] = o.tau;
    out["pinch"] = o.pinch ? nlohmann::ordered_json(*o.pinch) : nlohmann::ordered_json(nullptr);
    out["apex_direction"] =
        o.apex_direction ? detail::point_json(*o.apex_direction) : nlohmann::ordered_json(nullptr);
    return out;
}

RuledPatchd read_patch(const nlohmann::json& value, const std::string& path)
{
    using namespace detail;
    if (!value.is_object()) throw ParseError(path + ": expected an object");
    reject_unknown(value, {"degree", "knots", "base", "opposite", "lambda_star", "m_star"}, path);
    CurveData base, opposite;
    base.degree = opposite.degree = static_cast<int>(read_integer(require(value, "degree", path), join(path, "degree")));
    base.knots = opposite.knots = read_numbers(require(value, "knots", path), join(path, "knots"));
    base.control_points = read_points(require(value, "base", path), join(path, "base"));
    opposite.control_points = read_points(require(value, "opposite", path), join(path, "opposite"));
    try {
        return RuledPatchd(build_curve(base), build_curve(opposite));
    } catch (const Error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

std::string fmt(double x)
{
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.9g", x == 0.0 ? 0.0 : x);
    return buffer;
}

std::string fmt(const Eigen::Vector3d& p)
{
    return "(" + fmt(p.x()) + ", " + fmt(p.y()) + ", " + fmt(p.z()) + ")";
}

void write_polygon(std::ostream& out, const char* name, const BSplineCurved& curve)
{
    out << "  " << name << ":\n";
    for (Index i = 0; i <= curve.last_index(); ++i) {
        out << "    " << i << ": " << fmt(Eigen::Vector3d(curve.control_point(i))) << "\n";
    }
}

} // namespace

std::string solution_json(const SolveOutcome& outcome)
{
    nlohmann::ordered_json doc;
    doc["format"] = "devspline-solution";
    doc["version"] = 1;
    doc["problem"] = to_string(outcome.kind);
    doc["surface"] = patch_json(outcome.surface.base(), outcome.surface.opposite());
    auto strip = patch_json(outcome.strip.base(), outcome.strip.opposite());
    strip["lambda_star"] = outcome.strip.lambda_star();
    strip["m_star"] = outcome.strip.m_star();
    doc["strip"] = strip;
    doc["parameters"] = parameters_json(outcome);
    return detail::dump(doc);
}

LoadedSolution load_solution(const std::string& contents)
{
    using namespace detail;
    const nlohmann::json doc = parse_document(contents);
    if (!doc.is_object()) throw ParseError("document: expected an object");
    const auto& format = require(doc, "format", "");
    if (format != "devspline-solution") throw ParseError("format: expected \"devspline-solution\"");
    LoadedSolution loaded{read_patch(require(doc, "surface", ""), "surface"), std::nullopt, 0.0, 0.0};
    if (doc.contains("strip") && !doc["strip"].is_null()) {
        const auto& strip = doc["strip"];
        loaded.strip = read_patch(strip, "strip");
        loaded.lambda_star = read_number(require(strip, "lambda_star", "strip"), "strip.lambda_star");
        loaded.m_star = read_number(require(strip, "m_star", "strip"), "strip.m_star");
    }
    return loaded;
}

std::string report_json(const SolveOutcome& outcome, const ResidualSummary& residuals)
{
    nlohmann::ordered_json doc;
    doc["problem"] = to_string(outcome.kind);
    doc["polynomial_ascending"] = outcome.polynomial.coefficients();
    doc["roots"] = outcome.roots;
    doc["parameters"] = parameters_json(outcome);
    doc["strip"] = patch_json(outcome.strip.base(), outcome.strip.opposite());
    doc["surface"] = patch_json(outcome.surface.base(), outcome.surface.opposite());
    nlohmann::ordered_json r;
    r["developability_max"] = residuals.developability_max;
    r["developability_argmax_u"] = residuals.developability_argmax_u;
    r["developability_skipped"] = residuals.developability_skipped;
    r["strip_planarity_max"] = residuals.strip_planarity_max;
    r["strip_planarity_worst_cell"] = residuals.strip_planarity_worst_cell;
    r["control_relation_max"] = residuals.control_relation_max;
    r["surface_planarity_max"] = residuals.surface_planarity_max;
    doc["residuals"] = r;
    return detail::dump(doc);
}

std::string report_text(const SolveOutcome& outcome, const ResidualSummary& residuals)
{
    std::ostringstream out;
    out << "problem: " << to_string(outcome.kind) << "\n";
    out << "coplanarity polynomial (monic, descending):";
    const auto& coeffs = outcome.polynomial.coefficients();
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) out << " " << fmt(*it);
    out << "\nreal roots M*:";
    for (double r : outcome.roots) out << " " << fmt(r);
    out << "\nchosen root " << outcome.root_choice << ": M* = " << fmt(outcome.m_star)
        << ", Lambda* = " << fmt(outcome.lambda_star) << "\n";
    out << "alpha = " << fmt(outcome.alpha) << ", beta = " << fmt(outcome.beta) << "\n";
    out << "sigma = " << fmt(outcome.sigma) << ", tau = " << fmt(outcome.tau) << "\n";
    if (outcome.apex_direction) out << "apex direction v = " << fmt(*outcome.apex_direction) << "\n";
    if (outcome.pinch) out << "rulings pass through zero length at u = " << fmt(*outcome.pinch) << "\n";
    out << "strip (degree " << outcome.strip.base().degree() << "):\n";
    write_polygon(out, "c", outcome.strip.base());
    write_polygon(out, "d", outcome.strip.opposite());
    if (outcome.kind != ProblemKind::Problem1) {
        out << "surface (degree " << outcome.surface.base().degree() << "):\n";
        write_polygon(out, "c", outcome.surface.base());
        write_polygon(out, "d", outcome.surface.opposite());
    }
    out << "residuals:\n";
    out << "  developability max " << fmt(residuals.developability_max) << " at u = "
        << fmt(residuals.developability_argmax_u) << " (" << residuals.developability_skipped
        << " collapsed samples skipped)\n";
    out << "  strip cell planarity max " << fmt(residuals.strip_planarity_max) << " (cell "
        << residuals.strip_planarity_worst_cell << ")\n";
    out << "  control relation max " << fmt(residuals.control_relation_max) << "\n";
    out << "  surface net planarity max " << fmt(residuals.surface_planarity_max) << "\n";
    return out.str();
}

} // namespace devspline::io
