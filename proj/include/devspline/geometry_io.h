#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "devspline.h"

namespace devspline::io {

/// Malformed problem or solution document; the message carries the JSON field path.
class ParseError : public ArgumentError
{
public:
    using ArgumentError::ArgumentError;
};

enum class ProblemKind { Problem1, Problem2, Problem3 };

const char* to_string(ProblemKind kind);

struct CurveData
{
    int degree = 0;
    std::vector<double> knots;
    std::vector<Eigen::Vector3d> control_points;

    bool operator==(const CurveData&) const = default;
};

struct AnchorData
{
    bool first = true; // true: d0 on the first ruling, false: dL on the last
    Eigen::Vector3d point = Eigen::Vector3d::Zero();

    bool operator==(const AnchorData&) const = default;
};

struct ProblemSpec
{
    ProblemKind kind = ProblemKind::Problem1;
    CurveData curve;
    // problem1
    std::optional<Eigen::Vector3d> v;
    std::optional<Eigen::Vector3d> w;
    std::optional<AnchorData> anchor;
    // problem2: d0, dL; problem3: dL, apex_velocity
    std::optional<Eigen::Vector3d> d0;
    std::optional<Eigen::Vector3d> dL;
    std::optional<Eigen::Vector3d> apex_velocity;
    Index root_choice = 0;
    int u_samples = 16; // per piece
    int v_samples = 8;

    bool operator==(const ProblemSpec&) const = default;
};

BSplineCurved build_curve(const CurveData& data);
CurveData curve_data(const BSplineCurved& curve);

/// Validated problem; every structural rule of the curve is checked here.
ProblemSpec parse_problem(const std::string& contents);
std::string serialize_problem(const ProblemSpec& spec);

struct SolveOutcome
{
    ProblemKind kind;
    Index root_choice;
    Polynomiald polynomial; // monic coplanarity numerator
    std::vector<double> roots;
    double m_star;
    double lambda_star;
    double alpha;
    double beta;
    double sigma;
    double tau;
    std::optional<double> pinch;
    std::optional<Eigen::Vector3d> apex_direction;
    DevelopableStripd strip; // degree n strip with constant Lambda*, M*
    RuledPatchd surface;     // final patch (the strip itself for problem1)
};

SolveOutcome solve(const ProblemSpec& spec);

struct ResidualSummary
{
    double developability_max = 0;
    double developability_argmax_u = 0;
    Index developability_skipped = 0;
    double strip_planarity_max = 0;
    Index strip_planarity_worst_cell = 0;
    double control_relation_max = 0;
    double surface_planarity_max = 0; // net of the final patch; need not vanish after rescaling
};

inline constexpr int default_verify_samples = 100;
inline constexpr double developability_gate = 1e-8;
inline constexpr double strip_gate = 1e-9;

ResidualSummary summarize(const RuledPatchd& surface, const std::optional<DevelopableStripd>& strip,
                          int samples_per_piece = default_verify_samples);

std::string solution_json(const SolveOutcome& outcome);
std::string report_json(const SolveOutcome& outcome, const ResidualSummary& residuals);
std::string report_text(const SolveOutcome& outcome, const ResidualSummary& residuals);

struct LoadedSolution
{
    RuledPatchd surface;
    /// Strip nets as stored; not re-validated so that verification can report defects.
    std::optional<RuledPatchd> strip;
    double lambda_star = 0;
    double m_star = 0;
};

LoadedSolution load_solution(const std::string& contents);

/**
 * ASCII OBJ of the patch sampled u-major: each piece gets `u_samples` rows
 * sharing boundary rows with its neighbours, each row `v_samples` points from
 * c(u) to d(u). A row whose ruling has collapsed is one vertex fanned with
 * triangles. Coordinates are printed with 9 significant digits.
 */
std::string export_obj(const RuledPatchd& patch, int u_samples, int v_samples);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args);

} // namespace devspline::io
