#pragma once

#include "equiflow/geometry.hpp"

#include "json.hpp"

#include <string>

namespace equiflow {

/// Scene documents hold {"set": node}. A node is either a boolean operator
///   {"op": "union" | "intersection" | "complement", "children": [node, ...]}
/// or a primitive leaf
///   {"shape": "polygon", "vertices": [[x, y], ...]}
///   {"shape": "rectangle", "x": [x0, x1], "y": [y0, y1]}
///   {"shape": "disc", "center": [x, y], "radius": r}
///   {"shape": "superellipse", "center": [x, y], "semi_axes": [a, b],
///    "exponent": p, "rotation": radians}
///   {"shape": "power_graph", "coefficient": c, "exponent": p}
/// Numbers may be JSON numbers or strings holding a decimal or "p/q" literal.
SetExpr parse_set(const nlohmann::json& node);
SetExpr parse_scene(const nlohmann::json& doc);
SetExpr load_scene(const std::string& path);

nlohmann::json set_to_json(const SetExpr& set);
nlohmann::json scene_to_json(const SetExpr& set);

}  // namespace equiflow
