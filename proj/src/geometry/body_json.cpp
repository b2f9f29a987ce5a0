#include "hhv/geometry/body_json.hpp"

#include "hhv/geometry/shapes.hpp"

#include <fmt/format.h>

#include <vector>

namespace hhv::geometry {
namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::ConfigInvalid, what); }

Vec to_vec(const nlohmann::json& j) {
  if (!j.is_array() || j.empty() || j.size() > static_cast<std::size_t>(kMaxDimension))
    invalid("a point must be an array of 1..4 numbers");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) invalid("point coordinates must be numbers");
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return v;
}

template <class T>
T field(const nlohmann::json& spec, const char* key) {
  if (!spec.contains(key)) invalid(fmt::format("body is missing \"{}\"", key));
  try {
    return spec.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    invalid(fmt::format("body field \"{}\" has the wrong type", key));
  }
}

}  // namespace

ConvexBody body_from_json(const nlohmann::json& spec) {
  if (!spec.is_object()) invalid("body must be a JSON object");
  const auto type = field<std::string>(spec, "type");
  if (type == "polygon" || type == "polytope") {
    const auto& vs = spec.contains("vertices") ? spec.at("vertices") : nlohmann::json();
    if (!vs.is_array() || vs.empty()) invalid("\"vertices\" must be a non-empty array");
    std::vector<Vec> pts;
    for (const auto& p : vs) pts.push_back(to_vec(p));
    for (const auto& p : pts)
      if (p.size() != pts.front().size()) invalid("vertices have mixed dimensions");
    if (type == "polygon" && pts.front().size() != 2) invalid("polygon vertices must be 2-D");
    return ConvexBody::from_points(pts);
  }
  if (type == "simplex") return regular_simplex(field<int>(spec, "n"), spec.value("side", 1.0));
  if (type == "thin_simplex") return thin_simplex(field<int>(spec, "n"), field<double>(spec, "eta"));
  if (type == "box") {
    Vec sides;
    if (spec.contains("sides")) {
      sides = to_vec(spec.at("sides"));
    } else {
      const int n = field<int>(spec, "n");
      if (n < 1 || n > kMaxDimension) invalid("box dimension must be in 1..4");
      sides = Vec::Constant(n, spec.value("side", 1.0));
    }
    const Vec lo = spec.contains("lower") ? to_vec(spec.at("lower")) : Vec(Vec::Zero(sides.size()));
    if (lo.size() != sides.size()) invalid("box \"lower\" dimension mismatch");
    return box(lo, lo + sides);
  }
  if (type == "ball_polygon") {
    const int n = spec.value("n", 2);
    const Vec c = spec.contains("center") ? to_vec(spec.at("center")) : Vec(Vec::Zero(n));
    return ball_polytope(n, field<std::size_t>(spec, "segments"), spec.value("radius", 1.0), c);
  }
  invalid(fmt::format("unknown body type \"{}\"", type));
}

std::string body_id(const nlohmann::json& spec) {
  if (spec.contains("id") && spec.at("id").is_string()) return spec.at("id").get<std::string>();
  const std::string type = spec.value("type", std::string("body"));
  if (type == "thin_simplex") return fmt::format("thin_simplex_n{}_eta{}", spec.value("n", 0), spec.value("eta", 0.0));
  if (type == "simplex") return fmt::format("simplex_n{}", spec.value("n", 0));
  if (type == "ball_polygon") return fmt::format("ball_{}", spec.value("segments", 0));
  return type;
}

}  // namespace hhv::geometry
