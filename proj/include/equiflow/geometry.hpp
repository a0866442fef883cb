#pragma once

#include "equiflow/interval_set.hpp"

#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace equiflow {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Point a, Point b) { return a.x == b.x && a.y == b.y; }
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }

/// Straight segment P + t (Q - P), t in [0, 1].
struct Segment {
  Point from;
  Point to;
  Point at(double t) const { return from + t * (to - from); }
};

/// Convex polygon, vertices counter-clockwise.
struct Polygon {
  std::vector<Point> vertices;
};

/// Closed disc.
struct Disc {
  Point center;
  double radius = 0.0;
};

/// {c + R(rotation) (u, v) : |u/a|^p + |v/b|^p <= 1} with p = exponent >= 2.
struct Superellipse {
  Point center;
  double semi_a = 0.0;
  double semi_b = 0.0;
  double exponent = 2.0;
  double rotation = 0.0;
};

/// {(x, y) in [0,1]^2 : y >= c x^p}, convex for p >= 1. Models power-growth
/// epigraphs such as {y > x^2}.
struct PowerGraph {
  double coefficient = 1.0;
  double exponent = 2.0;
};

using ConvexPrimitive = std::variant<Polygon, Disc, Superellipse, PowerGraph>;

Polygon make_rectangle(double x0, double x1, double y0, double y1);
Polygon unit_square_polygon();

bool contains(const ConvexPrimitive& prim, Point p);
/// Parameter set {t in [0,1] : seg(t) in prim}: empty or a single interval.
IntervalSet clip_segment_primitive(const ConvexPrimitive& prim, const Segment& seg);
/// Negative inside, positive outside, zero on the boundary (not a distance).
double level(const ConvexPrimitive& prim, Point p);
double closed_form_area(const ConvexPrimitive& prim);
/// Throws invalid-argument unless the primitive is well formed and inside [0,1]^2.
void validate(const ConvexPrimitive& prim);
std::string shape_name(const ConvexPrimitive& prim);

/// Element of the algebra of convex sets: a boolean tree over convex primitives.
/// Complement is relative to [0,1]^2. Immutable and cheap to copy.
class SetExpr {
 public:
  enum class Op { kPrimitive, kUnion, kIntersection, kComplement };

  static SetExpr primitive(ConvexPrimitive prim);
  static SetExpr union_of(std::vector<SetExpr> children);
  static SetExpr intersection_of(std::vector<SetExpr> children);
  static SetExpr complement(SetExpr child);
  static SetExpr unit_square();
  static SetExpr empty();

  Op op() const;
  const ConvexPrimitive& leaf() const;
  const std::vector<SetExpr>& children() const;

  bool contains(Point p) const;
  /// Throws invalid-argument on the first malformed primitive.
  void validate() const;
  bool has_complement() const;
  /// Leaves in depth-first order; boundary pieces refer to these indices.
  std::vector<ConvexPrimitive> primitives() const;
  /// Canonical text form; stable across runs.
  std::string canonical() const;

 private:
  struct Node;
  explicit SetExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

IntervalSet clip_segment(const SetExpr& set, const Segment& seg);
/// Length fraction of the segment inside the set; same value as
/// clip_segment(...).measure().
double clipped_fraction(const SetExpr& set, const Segment& seg);

struct AreaOptions {
  double tol = 1e-9;
  int max_intervals = 200000;
  /// Closed forms for a bare primitive or the complement of one.
  bool use_closed_form = true;
};

/// Lebesgue measure of the set. Bare primitives use closed forms; expressions
/// integrate horizontal slice lengths with adaptive Gauss-Legendre quadrature.
double area(const SetExpr& set, const AreaOptions& options = {});

}  // namespace equiflow
