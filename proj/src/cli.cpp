#include "json_support.h"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <iostream>

namespace devspline::io {

namespace {

constexpr const char* version_string = "devspline 1.0.0";

struct SolveArgs
{
    std::string problem;
    std::string out_dir = ".";
    Index root = 0;
    int u_samples = 0;
    int v_samples = 0;
};

int run_solve(const SolveArgs& args, bool root_given, std::ostream& out)
{
    ProblemSpec spec = parse_problem(read_file(args.problem));
    if (root_given) spec.root_choice = args.root;
    if (args.u_samples > 0) spec.u_samples = args.u_samples;
    if (args.v_samples > 0) spec.v_samples = args.v_samples;

    const SolveOutcome outcome = solve(spec);
    const ResidualSummary residuals = summarize(outcome.surface, outcome.strip);

    std::filesystem::create_directories(args.out_dir);
    const std::filesystem::path dir(args.out_dir);
    const std::string text = report_text(outcome, residuals);
    write_file((dir / "solution.json").string(), solution_json(outcome));
    write_file((dir / "report.json").string(), report_json(outcome, residuals));
    write_file((dir / "report.txt").string(), text);
    write_file((dir / "surface.obj").string(), export_obj(outcome.surface, spec.u_samples, spec.v_samples));
    out << text;
    return 0;
}

int run_verify(const std::string& path, int samples, std::ostream& out)
{
    const LoadedSolution loaded = load_solution(read_file(path));
    const auto dev = developability_residual(loaded.surface, samples);
    bool ok = dev.max_residual <= developability_gate;
    char line[256];
    std::snprintf(line, sizeof line, "max developability residual: %.3e at u = %.9g (gate %.0e, %lld skipped)\n",
                  dev.max_residual, dev.argmax_u, developability_gate, static_cast<long long>(dev.skipped));
    out << line;
    if (loaded.strip) {
        const auto& strip = *loaded.strip;
        const double relation =
            verify_control_relation(strip.base(), strip.opposite(), loaded.lambda_star, loaded.m_star);
        const auto cells = planarity_report(strip);
        const double planarity = cells.empty() ? 0.0 : *std::max_element(cells.begin(), cells.end());
        const auto strip_dev = developability_residual(strip, samples);
        ok = ok && relation <= strip_gate && planarity <= strip_gate &&
             strip_dev.max_residual <= developability_gate;
        std::snprintf(line, sizeof line,
                      "strip: control relation %.3e, cell planarity %.3e (gate %.0e), developability %.3e\n",
                      relation, planarity, strip_gate, strip_dev.max_residual);
        out << line;
    }
    out << (ok ? "verified\n" : "FAILED\n");
    return ok ? 0 : 4;
}

int run_elevate(const std::string& path, std::ostream& out)
{
    const nlohmann::json doc = detail::parse_document(read_file(path));
    const bool wrapped = doc.is_object() && doc.contains("curve");
    const CurveData data = detail::read_curve(wrapped ? doc["curve"] : doc, wrapped ? "curve" : "document");
    const BSplineCurved elevated = elevate_degree(build_curve(data));
    out << detail::dump(detail::curve_json(curve_data(elevated)));
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Developable B-spline patches from boundary curves and rulings", "devspline"};
    app.set_version_flag("--version", version_string);
    app.require_subcommand(1);

    SolveArgs solve_args;
    auto* solve_cmd = app.add_subcommand("solve", "Solve a problem file and write solution, report and OBJ");
    solve_cmd->add_option("--problem", solve_args.problem, "Problem JSON file")->required();
    auto* root_opt = solve_cmd->add_option("--root", solve_args.root, "Index of the real root M* (ascending)")
                         ->check(CLI::NonNegativeNumber);
    solve_cmd->add_option("--out", solve_args.out_dir, "Output directory")->capture_default_str();
    solve_cmd->add_option("--u-samples", solve_args.u_samples, "OBJ samples per piece along u")
        ->check(CLI::Range(2, 100000));
    solve_cmd->add_option("--v-samples", solve_args.v_samples, "OBJ samples along each ruling")
        ->check(CLI::Range(2, 100000));

    std::string surface_path;
    int verify_samples = default_verify_samples;
    auto* verify_cmd = app.add_subcommand("verify", "Re-check a solution file with independent sampling");
    verify_cmd->add_option("--surface", surface_path, "Solution JSON file")->required();
    verify_cmd->add_option("--samples", verify_samples, "Samples per piece")
        ->check(CLI::Range(2, 1000000))
        ->capture_default_str();

    std::string curve_path;
    auto* elevate_cmd = app.add_subcommand("elevate", "Print the degree-elevated curve as JSON");
    elevate_cmd->add_option("--curve", curve_path, "Curve JSON file (or a problem file)")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*solve_cmd) return run_solve(solve_args, root_opt->count() > 0, out);
        if (*verify_cmd) return run_verify(surface_path, verify_samples, out);
        if (*elevate_cmd) return run_elevate(curve_path, out);
    } catch (const DegenerateCaseError& e) {
        err << "degenerate case (" << to_string(e.kind()) << "): " << e.what() << "\n";
        return 3;
    } catch (const InfeasibleError& e) {
        err << "infeasible: " << e.what() << "\n";
        return 2;
    } catch (const InconsistentRootError& e) {
        err << "inconsistent root: " << e.what() << "\n";
        return 2;
    } catch (const PoleError& e) {
        err << "pole: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

int run_cli(const std::vector<std::string>& args)
{
    return run_cli(args, std::cout, std::cerr);
}

} // namespace devspline::io
