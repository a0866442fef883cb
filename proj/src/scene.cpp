#include "equiflow/scene.hpp"

#include "equiflow/error.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace equiflow {
namespace {

using nlohmann::json;

double number(const json& v, const std::string& what) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string text = v.get<std::string>();
    const auto slash = text.find('/');
    char* end = nullptr;
    if (slash != std::string::npos) {
      const double num = std::strtod(text.substr(0, slash).c_str(), &end);
      const double den = std::strtod(text.substr(slash + 1).c_str(), &end);
      require(den != 0.0, what + ": zero denominator");
      return num / den;
    }
    const double out = std::strtod(text.c_str(), &end);
    require(end != text.c_str() && *end == '\0', what + ": not a number: " + text);
    return out;
  }
  fail(ErrorKind::kInvalidArgument, what + " must be a number");
}

const json& field(const json& node, const char* key) {
  require(node.is_object() && node.contains(key), std::string("scene node missing \"") + key + "\"");
  return node.at(key);
}

Point point(const json& v, const std::string& what) {
  require(v.is_array() && v.size() == 2, what + " must be a 2-element array");
  return {number(v[0], what), number(v[1], what)};
}

ConvexPrimitive primitive(const json& node) {
  const std::string shape = field(node, "shape").get<std::string>();
  if (shape == "polygon") {
    Polygon poly;
    const json& verts = field(node, "vertices");
    require(verts.is_array(), "polygon vertices must be an array");
    for (const json& v : verts) poly.vertices.push_back(point(v, "polygon vertex"));
    return poly;
  }
  if (shape == "rectangle") {
    const Point xs = point(field(node, "x"), "rectangle x");
    const Point ys = point(field(node, "y"), "rectangle y");
    return make_rectangle(xs.x, xs.y, ys.x, ys.y);
  }
  if (shape == "disc") {
    return Disc{point(field(node, "center"), "disc center"), number(field(node, "radius"), "disc radius")};
  }
  if (shape == "superellipse") {
    Superellipse s;
    s.center = point(field(node, "center"), "superellipse center");
    const Point axes = point(field(node, "semi_axes"), "superellipse semi_axes");
    s.semi_a = axes.x;
    s.semi_b = axes.y;
    s.exponent = number(field(node, "exponent"), "superellipse exponent");
    s.rotation = node.contains("rotation") ? number(node.at("rotation"), "superellipse rotation") : 0.0;
    return s;
  }
  if (shape == "power_graph") {
    PowerGraph g;
    g.coefficient = node.contains("coefficient") ? number(node.at("coefficient"), "coefficient") : 1.0;
    g.exponent = number(field(node, "exponent"), "power_graph exponent");
    return g;
  }
  fail(ErrorKind::kInvalidArgument, "unknown shape \"" + shape + "\"");
}

json point_json(Point p) { return json::array({p.x, p.y}); }

}  // namespace

SetExpr parse_set(const json& node) {
  require(node.is_object(), "scene node must be an object");
  if (node.contains("shape")) return SetExpr::primitive(primitive(node));
  const std::string op = field(node, "op").get<std::string>();
  const json& kids = field(node, "children");
  require(kids.is_array(), "children must be an array");
  std::vector<SetExpr> children;
  for (const json& k : kids) children.push_back(parse_set(k));
  if (op == "union") return SetExpr::union_of(std::move(children));
  if (op == "intersection") return SetExpr::intersection_of(std::move(children));
  if (op == "complement") {
    require(children.size() == 1, "complement takes exactly one child");
    return SetExpr::complement(std::move(children.front()));
  }
  fail(ErrorKind::kInvalidArgument, "unknown op \"" + op + "\"");
}

SetExpr parse_scene(const json& doc) {
  SetExpr set = parse_set(field(doc, "set"));
  set.validate();
  return set;
}

SetExpr load_scene(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open scene file " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    fail(ErrorKind::kInvalidArgument, "scene " + path + ": " + e.what());
  }
  return parse_scene(doc);
}

json set_to_json(const SetExpr& set) {
  switch (set.op()) {
    case SetExpr::Op::kPrimitive: {
      const ConvexPrimitive& prim = set.leaf();
      json out;
      out["shape"] = shape_name(prim);
      if (auto* poly = std::get_if<Polygon>(&prim)) {
        out["vertices"] = json::array();
        for (const Point& v : poly->vertices) out["vertices"].push_back(point_json(v));
      } else if (auto* d = std::get_if<Disc>(&prim)) {
        out["center"] = point_json(d->center);
        out["radius"] = d->radius;
      } else if (auto* s = std::get_if<Superellipse>(&prim)) {
        out["center"] = point_json(s->center);
        out["semi_axes"] = json::array({s->semi_a, s->semi_b});
        out["exponent"] = s->exponent;
        out["rotation"] = s->rotation;
      } else if (auto* g = std::get_if<PowerGraph>(&prim)) {
        out["coefficient"] = g->coefficient;
        out["exponent"] = g->exponent;
      }
      return out;
    }
    case SetExpr::Op::kUnion:
    case SetExpr::Op::kIntersection:
    case SetExpr::Op::kComplement: {
      json out;
      out["op"] = set.op() == SetExpr::Op::kUnion          ? "union"
                  : set.op() == SetExpr::Op::kIntersection ? "intersection"
                                                           : "complement";
      out["children"] = json::array();
      for (const SetExpr& c : set.children()) out["children"].push_back(set_to_json(c));
      return out;
    }
  }
  return {};
}

json scene_to_json(const SetExpr& set) { return json{{"set", set_to_json(set)}}; }

}  // namespace equiflow
