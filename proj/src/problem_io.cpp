#include "json_support.h"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace devspline::io {

const char* to_string(ProblemKind kind)
{
    switch (kind) {
    case ProblemKind::Problem1: return "problem1";
    case ProblemKind::Problem2: return "problem2";
    case ProblemKind::Problem3: return "problem3";
    }
    return "unknown";
}

namespace detail {

nlohmann::json parse_document(const std::string& contents)
{
    try {
        return nlohmann::json::parse(contents);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

const nlohmann::json& require(const nlohmann::json& object, const std::string& key, const std::string& path)
{
    if (!object.is_object()) throw ParseError(path + ": expected an object");
    auto it = object.find(key);
    if (it == object.end()) throw ParseError(join(path, key) + ": missing required field");
    return *it;
}

void reject_unknown(const nlohmann::json& object, std::initializer_list<const char*> allowed,
                    const std::string& path)
{
    for (auto it = object.begin(); it != object.end(); ++it) {
        const bool known = std::any_of(allowed.begin(), allowed.end(),
                                       [&](const char* name) { return it.key() == name; });
        if (!known) throw ParseError(join(path, it.key()) + ": unknown field");
    }
}

std::string join(const std::string& path, const std::string& key)
{
    return path.empty() ? key : path + "." + key;
}

double read_number(const nlohmann::json& value, const std::string& path)
{
    if (!value.is_number()) throw ParseError(path + ": expected a number");
    const double x = value.get<double>();
    if (!std::isfinite(x)) throw ParseError(path + ": number is not finite");
    return x;
}

long long read_integer(const nlohmann::json& value, const std::string& path)
{
    if (!value.is_number_integer()) throw ParseError(path + ": expected an integer");
    return value.get<long long>();
}

Eigen::Vector3d read_point(const nlohmann::json& value, const std::string& path)
{
    if (!value.is_array() || value.size() != 3) {
        throw ParseError(path + ": expected an array of 3 numbers");
    }
    Eigen::Vector3d p;
    for (int k = 0; k < 3; ++k) {
        p[k] = read_number(value[static_cast<size_t>(k)], path + "[" + std::to_string(k) + "]");
    }
    return p;
}

std::vector<Eigen::Vector3d> read_points(const nlohmann::json& value, const std::string& path)
{
    if (!value.is_array()) throw ParseError(path + ": expected an array of points");
    std::vector<Eigen::Vector3d> points;
    for (size_t i = 0; i < value.size(); ++i) {
        points.push_back(read_point(value[i], path + "[" + std::to_string(i) + "]"));
    }
    return points;
}

std::vector<double> read_numbers(const nlohmann::json& value, const std::string& path)
{
    if (!value.is_array()) throw ParseError(path + ": expected an array of numbers");
    std::vector<double> numbers;
    for (size_t i = 0; i < value.size(); ++i) {
        numbers.push_back(read_number(value[i], path + "[" + std::to_string(i) + "]"));
    }
    return numbers;
}

CurveData read_curve(const nlohmann::json& value, const std::string& path)
{
    if (!value.is_object()) throw ParseError(path + ": expected an object");
    reject_unknown(value, {"degree", "knots", "control_points"}, path);
    CurveData curve;
    const auto degree = read_integer(require(value, "degree", path), join(path, "degree"));
    if (degree < 1 || degree > 64) throw ParseError(join(path, "degree") + ": must be in [1, 64]");
    curve.degree = static_cast<int>(degree);
    curve.knots = read_numbers(require(value, "knots", path), join(path, "knots"));
    curve.control_points = read_points(require(value, "control_points", path), join(path, "control_points"));
    try {
        build_curve(curve);
    } catch (const Error& e) {
        throw ParseError(path + ": " + e.what());
    }
    return curve;
}

nlohmann::ordered_json point_json(const Eigen::Vector3d& p)
{
    return nlohmann::ordered_json::array({p.x(), p.y(), p.z()});
}

nlohmann::ordered_json polygon_json(const Polygon<double>& polygon)
{
    auto out = nlohmann::ordered_json::array();
    for (Index i = 0; i < polygon.rows(); ++i) out.push_back(point_json(row_point(polygon, i)));
    return out;
}

nlohmann::ordered_json curve_json(const CurveData& curve)
{
    nlohmann::ordered_json out;
    out["degree"] = curve.degree;
    out["knots"] = curve.knots;
    auto points = nlohmann::ordered_json::array();
    for (const auto& p : curve.control_points) points.push_back(point_json(p));
    out["control_points"] = points;
    return out;
}

std::string dump(const nlohmann::ordered_json& document)
{
    return document.dump(2) + "\n";
}

} // namespace detail

BSplineCurved build_curve(const CurveData& data)
{
    Polygon<double> control(static_cast<Index>(data.control_points.size()), 3);
    for (size_t i = 0; i < data.control_points.size(); ++i) {
        control.row(static_cast<Index>(i)) = data.control_points[i].transpose();
    }
    return BSplineCurved::from_knot_list(data.degree, data.knots, std::move(control));
}

CurveData curve_data(const BSplineCurved& curve)
{
    CurveData data;
    data.degree = curve.degree();
    data.knots = curve.knots().values();
    for (Index i = 0; i <= curve.last_index(); ++i) data.control_points.push_back(curve.control_point(i));
    return data;
}

ProblemSpec parse_problem(const std::string& contents)
{
    using namespace detail;
    const nlohmann::json doc = parse_document(contents);
    if (!doc.is_object()) throw ParseError("document: expected an object");
    reject_unknown(doc, {"problem", "curve", "rulings", "root_choice", "tessellation"}, "");

    ProblemSpec spec;
    const auto& kind = require(doc, "problem", "");
    if (kind == "problem1") {
        spec.kind = ProblemKind::Problem1;
    } else if (kind == "problem2") {
        spec.kind = ProblemKind::Problem2;
    } else if (kind == "problem3") {
        spec.kind = ProblemKind::Problem3;
    } else {
        throw ParseError("problem: expected \"problem1\", \"problem2\" or \"problem3\"");
    }
    spec.curve = read_curve(require(doc, "curve", ""), "curve");

    const auto& rulings = require(doc, "rulings", "");
    if (!rulings.is_object()) throw ParseError("rulings: expected an object");
    switch (spec.kind) {
    case ProblemKind::Problem1: {
        reject_unknown(rulings, {"v", "w", "anchor"}, "rulings");
        spec.v = read_point(require(rulings, "v", "rulings"), "rulings.v");
        spec.w = read_point(require(rulings, "w", "rulings"), "rulings.w");
        const auto& anchor = require(rulings, "anchor", "rulings");
        if (!anchor.is_object()) throw ParseError("rulings.anchor: expected an object");
        reject_unknown(anchor, {"end", "point"}, "rulings.anchor");
        const auto& end = require(anchor, "end", "rulings.anchor");
        if (end != "d0" && end != "dL") throw ParseError("rulings.anchor.end: expected \"d0\" or \"dL\"");
        spec.anchor = AnchorData{end == "d0", read_point(require(anchor, "point", "rulings.anchor"),
                                                         "rulings.anchor.point")};
        break;
    }
    case ProblemKind::Problem2:
        reject_unknown(rulings, {"d0", "dL"}, "rulings");
        spec.d0 = read_point(require(rulings, "d0", "rulings"), "rulings.d0");
        spec.dL = read_point(require(rulings, "dL", "rulings"), "rulings.dL");
        break;
    case ProblemKind::Problem3:
        reject_unknown(rulings, {"dL", "apex_velocity"}, "rulings");
        spec.dL = read_point(require(rulings, "dL", "rulings"), "rulings.dL");
        spec.apex_velocity = read_point(require(rulings, "apex_velocity", "rulings"), "rulings.apex_velocity");
        break;
    }

    if (doc.contains("root_choice")) {
        const auto root = read_integer(doc["root_choice"], "root_choice");
        if (root < 0) throw ParseError("root_choice: must be nonnegative");
        spec.root_choice = static_cast<Index>(root);
    }
    if (doc.contains("tessellation")) {
        const auto& tess = doc["tessellation"];
        if (!tess.is_object()) throw ParseError("tessellation: expected an object");
        reject_unknown(tess, {"u_samples", "v_samples"}, "tessellation");
        auto read_count = [&](const char* key, int& target) {
            if (!tess.contains(key)) return;
            const auto value = read_integer(tess[key], join("tessellation", key));
            if (value < 2 || value > 100000) {
                throw ParseError(join("tessellation", key) + ": must be in [2, 100000]");
            }
            target = static_cast<int>(value);
        };
        read_count("u_samples", spec.u_samples);
        read_count("v_samples", spec.v_samples);
    }
    return spec;
}

std::string serialize_problem(const ProblemSpec& spec)
{
    using namespace detail;
    nlohmann::ordered_json doc;
    doc["problem"] = to_string(spec.kind);
    doc["curve"] = curve_json(spec.curve);
    nlohmann::ordered_json rulings = nlohmann::ordered_json::object();
    switch (spec.kind) {
    case ProblemKind::Problem1:
        rulings["v"] = point_json(spec.v.value());
        rulings["w"] = point_json(spec.w.value());
        rulings["anchor"] = {{"end", spec.anchor.value().first ? "d0" : "dL"},
                             {"point", point_json(spec.anchor.value().point)}};
        break;
    case ProblemKind::Problem2:
        rulings["d0"] = point_json(spec.d0.value());
        rulings["dL"] = point_json(spec.dL.value());
        break;
    case ProblemKind::Problem3:
        rulings["dL"] = point_json(spec.dL.value());
        rulings["apex_velocity"] = point_json(spec.apex_velocity.value());
        break;
    }
    doc["rulings"] = rulings;
    doc["root_choice"] = spec.root_choice;
    doc["tessellation"] = {{"u_samples", spec.u_samples}, {"v_samples", spec.v_samples}};
    return dump(doc);
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ArgumentError("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& contents)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ArgumentError("cannot write " + path);
    out << contents;
    if (!out) throw ArgumentError("failed writing " + path);
}

} // namespace devspline::io
