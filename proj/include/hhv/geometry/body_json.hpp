#pragma once

#include "hhv/geometry/convex_body.hpp"

#include <json.hpp>

#include <string>

namespace hhv::geometry {

/// Builds a body from its JSON description:
///
///   {"type": "polygon" | "polytope", "vertices": [[x, ...], ...]}
///   {"type": "simplex", "n": 3, "side": 1}
///   {"type": "thin_simplex", "n": 2, "eta": 20}
///   {"type": "box", "sides": [2, 1]}           or {"type": "box", "n": 3, "side": 1}
///   {"type": "ball_polygon", "segments": 720, "radius": 1, "center": [0, 0]}
///
/// ball_polygon accepts "n": 3 for a polyhedral ball.  Any body may carry an
/// "id"; malformed input throws ConfigInvalid.
ConvexBody body_from_json(const nlohmann::json& spec);

/// The "id" field when present, otherwise a name derived from the type.
std::string body_id(const nlohmann::json& spec);

}  // namespace hhv::geometry
