#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include <json.hpp>

#include <devspline/geometry_io.h>

namespace devspline::io::detail {

nlohmann::json parse_document(const std::string& contents);
std::string join(const std::string& path, const std::string& key);
const nlohmann::json& require(const nlohmann::json& object, const std::string& key, const std::string& path);
void reject_unknown(const nlohmann::json& object, std::initializer_list<const char*> allowed,
                    const std::string& path);

double read_number(const nlohmann::json& value, const std::string& path);
long long read_integer(const nlohmann::json& value, const std::string& path);
Eigen::Vector3d read_point(const nlohmann::json& value, const std::string& path);
std::vector<Eigen::Vector3d> read_points(const nlohmann::json& value, const std::string& path);
std::vector<double> read_numbers(const nlohmann::json& value, const std::string& path);
CurveData read_curve(const nlohmann::json& value, const std::string& path);

nlohmann::ordered_json point_json(const Eigen::Vector3d& p);
nlohmann::ordered_json polygon_json(const Polygon<double>& polygon);
nlohmann::ordered_json curve_json(const CurveData& curve);
std::string dump(const nlohmann::ordered_json& document);

} // namespace devspline::io::detail
