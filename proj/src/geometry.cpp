#include "equiflow/geometry.hpp"

#include "equiflow/error.hpp"
#include "equiflow/quadrature.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>

namespace equiflow {

struct SetExpr::Node {
  Op op = Op::kPrimitive;
  ConvexPrimitive leaf;
  std::vector<SetExpr> children;
};

namespace {

constexpr double kContainTol = 1e-12;
constexpr double kInvGolden = 0.6180339887498949;

/// |x|^p with a multiplication path for small integer exponents.
double abs_pow(double x, double p) {
  x = std::abs(x);
  const double r = std::nearbyint(p);
  if (r == p && r >= 1.0 && r <= 16.0) {
    int n = static_cast<int>(r);
    double result = 1.0;
    double base = x;
    while (n > 0) {
      if (n & 1) result *= base;
      base *= base;
      n >>= 1;
    }
    return result;
  }
  return std::pow(x, p);
}

/// Liang-Barsky clip of the parameter range [lo, hi] against a box.
bool clip_box(const Segment& seg, double x0, double x1, double y0, double y1, double& lo,
              double& hi) {
  const Point d = seg.to - seg.from;
  auto edge = [&](double p, double q) {
    // Constraint p t <= q.
    if (p == 0.0) return q >= 0.0;
    const double r = q / p;
    if (p < 0.0) {
      if (r > lo) lo = r;
    } else {
      if (r < hi) hi = r;
    }
    return lo <= hi;
  };
  return edge(-d.x, seg.from.x - x0) && edge(d.x, x1 - seg.from.x) &&
         edge(-d.y, seg.from.y - y0) && edge(d.y, y1 - seg.from.y);
}

/// {t in [lo, hi] : g(t) <= 0} for a convex g, as a single interval or empty.
template <class G>
IntervalSet convex_sublevel(G&& g, double lo, double hi) {
  const Interval unit{0.0, 1.0};
  double glo = g(lo), ghi = g(hi);
  double neg = std::numeric_limits<double>::quiet_NaN();
  if (glo <= 0.0) neg = lo;
  else if (ghi <= 0.0) neg = hi;
  if (std::isnan(neg)) {
    // Golden-section search for a point with g <= 0, stopping at the minimum.
    double a = lo, b = hi;
    double c = b - kInvGolden * (b - a);
    double d = a + kInvGolden * (b - a);
    double gc = g(c), gd = g(d);
    for (int iter = 0; iter < 200; ++iter) {
      if (gc <= 0.0) { neg = c; break; }
      if (gd <= 0.0) { neg = d; break; }
      if (!(b - a > 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(a))))
        break;
      if (gc < gd) {
        b = d;
        d = c;
        gd = gc;
        c = b - kInvGolden * (b - a);
        gc = g(c);
      } else {
        a = c;
        c = d;
        gc = gd;
        d = a + kInvGolden * (b - a);
        gd = g(d);
      }
    }
    if (std::isnan(neg)) return IntervalSet(unit);
  }
  auto bisect = [&](double out, double in) {
    // g(out) > 0 >= g(in); returns the crossing to machine resolution.
    for (int iter = 0; iter < 200; ++iter) {
      const double mid = 0.5 * (out + in);
      if (mid == out || mid == in) break;
      if (g(mid) <= 0.0) in = mid; else out = mid;
    }
    return 0.5 * (out + in);
  };
  const double left = glo <= 0.0 ? lo : bisect(lo, neg);
  const double right = ghi <= 0.0 ? hi : bisect(hi, neg);
  return IntervalSet(unit, {left, right});
}

struct LocalFrame {
  double cos_r, sin_r;
  Point to_local(Point p, Point c) const {
    const Point q = p - c;
    return {cos_r * q.x + sin_r * q.y, -sin_r * q.x + cos_r * q.y};
  }
};

LocalFrame frame_of(const Superellipse& s) { return {std::cos(s.rotation), std::sin(s.rotation)}; }

/// Support function of a superellipse in direction d.
double support(const Superellipse& s, Point d) {
  const LocalFrame f = frame_of(s);
  const double wu = f.cos_r * d.x + f.sin_r * d.y;
  const double wv = -f.sin_r * d.x + f.cos_r * d.y;
  const double q = s.exponent / (s.exponent - 1.0);
  const double au = std::abs(s.semi_a * wu), bv = std::abs(s.semi_b * wv);
  const double m = std::max(au, bv);
  if (m == 0.0) return 0.0;
  return m * std::pow(std::pow(au / m, q) + std::pow(bv / m, q), 1.0 / q);
}

double superellipse_level(const Superellipse& s, const LocalFrame& f, Point p) {
  const Point u = f.to_local(p, s.center);
  return abs_pow(u.x / s.semi_a, s.exponent) + abs_pow(u.y / s.semi_b, s.exponent) - 1.0;
}

struct Extent {
  double x0, x1, y0, y1;
};

Extent extent_of(const ConvexPrimitive& prim) {
  struct V {
    Extent operator()(const Polygon& poly) const {
      Extent e{1e300, -1e300, 1e300, -1e300};
      for (const Point& v : poly.vertices) {
        e.x0 = std::min(e.x0, v.x);
        e.x1 = std::max(e.x1, v.x);
        e.y0 = std::min(e.y0, v.y);
        e.y1 = std::max(e.y1, v.y);
      }
      return e;
    }
    Extent operator()(const Disc& d) const {
      return {d.center.x - d.radius, d.center.x + d.radius, d.center.y - d.radius,
              d.center.y + d.radius};
    }
    Extent operator()(const Superellipse& s) const {
      const double hx = support(s, {1.0, 0.0});
      const double hy = support(s, {0.0, 1.0});
      return {s.center.x - hx, s.center.x + hx, s.center.y - hy, s.center.y + hy};
    }
    Extent operator()(const PowerGraph&) const { return {0.0, 1.0, 0.0, 1.0}; }
  };
  return std::visit(V{}, prim);
}

void append_number(std::string& out, double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

}  // namespace

Polygon make_rectangle(double x0, double x1, double y0, double y1) {
  return Polygon{{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}};
}

Polygon unit_square_polygon() { return make_rectangle(0.0, 1.0, 0.0, 1.0); }

bool contains(const ConvexPrimitive& prim, Point p) {
  struct V {
    Point p;
    bool operator()(const Polygon& poly) const {
      const auto& v = poly.vertices;
      const std::size_t n = v.size();
      for (std::size_t i = 0; i < n; ++i) {
        const Point a = v[i], b = v[i + 1 == n ? 0 : i + 1];
        if (cross(b - a, p - a) < 0.0) return false;
      }
      return true;
    }
    bool operator()(const Disc& d) const {
      const double dx = p.x - d.center.x, dy = p.y - d.center.y;
      return dx * dx + dy * dy <= d.radius * d.radius;
    }
    bool operator()(const Superellipse& s) const {
      const LocalFrame f = frame_of(s);
      const Point u = f.to_local(p, s.center);
      if (std::abs(u.x) > s.semi_a || std::abs(u.y) > s.semi_b) return false;
      return abs_pow(u.x / s.semi_a, s.exponent) + abs_pow(u.y / s.semi_b, s.exponent) <= 1.0;
    }
    bool operator()(const PowerGraph& g) const {
      if (p.x < 0.0 || p.x > 1.0 || p.y < 0.0 || p.y > 1.0) return false;
      return p.y >= g.coefficient * abs_pow(p.x, g.exponent);
    }
  };
  return std::visit(V{p}, prim);
}

IntervalSet clip_segment_primitive(const ConvexPrimitive& prim, const Segment& seg) {
  struct V {
    const Segment& seg;
    IntervalSet operator()(const Polygon& poly) const {
      // Cyrus-Beck against the edge half-planes cross(e, x - v) >= 0.
      const Point d = seg.to - seg.from;
      double lo = 0.0, hi = 1.0;
      const auto& v = poly.vertices;
      const std::size_t n = v.size();
      for (std::size_t i = 0; i < n; ++i) {
        const Point a = v[i], e = v[i + 1 == n ? 0 : i + 1] - a;
        const double num = cross(e, seg.from - a);
        const double den = cross(e, d);
        if (den == 0.0) {
          if (num < 0.0) return IntervalSet();
          continue;
        }
        const double t = -num / den;
        if (den > 0.0) lo = std::max(lo, t);
        else hi = std::min(hi, t);
        if (lo >= hi) return IntervalSet();
      }
      return IntervalSet({0.0, 1.0}, {lo, hi});
    }
    IntervalSet operator()(const Disc& disc) const {
      const Point d = seg.to - seg.from;
      const Point w = seg.from - disc.center;
      const double a = dot(d, d);
      const double b = dot(d, w);
      const double c = dot(w, w) - disc.radius * disc.radius;
      const double disc2 = b * b - a * c;
      if (!(disc2 > 0.0)) return IntervalSet();
      const double root = std::sqrt(disc2);
      // Stable pair of roots of a t^2 + 2 b t + c.
      const double qv = b >= 0.0 ? -(b + root) : -(b - root);
      double t1 = qv / a;
      double t2 = qv != 0.0 ? c / qv : -t1;
      if (t1 > t2) std::swap(t1, t2);
      return IntervalSet({0.0, 1.0}, {t1, t2});
    }
    IntervalSet operator()(const Superellipse& s) const {
      const LocalFrame f = frame_of(s);
      const Point pl = f.to_local(seg.from, s.center);
      const Point ql = f.to_local(seg.to, s.center);
      const Segment local{pl, ql};
      double lo = 0.0, hi = 1.0;
      if (!clip_box(local, -s.semi_a, s.semi_a, -s.semi_b, s.semi_b, lo, hi))
        return IntervalSet();
      const Point d = ql - pl;
      auto g = [&](double t) {
        return abs_pow((pl.x + t * d.x) / s.semi_a, s.exponent) +
               abs_pow((pl.y + t * d.y) / s.semi_b, s.exponent) - 1.0;
      };
      return convex_sublevel(g, lo, hi);
    }
    IntervalSet operator()(const PowerGraph& pg) const {
      double lo = 0.0, hi = 1.0;
      if (!clip_box(seg, 0.0, 1.0, 0.0, 1.0, lo, hi)) return IntervalSet();
      const Point d = seg.to - seg.from;
      auto g = [&](double t) {
        const double x = std::max(seg.from.x + t * d.x, 0.0);
        return pg.coefficient * abs_pow(x, pg.exponent) - (seg.from.y + t * d.y);
      };
      return convex_sublevel(g, lo, hi);
    }
  };
  return std::visit(V{seg}, prim);
}

double level(const ConvexPrimitive& prim, Point p) {
  struct V {
    Point p;
    double operator()(const Polygon& poly) const {
      const auto& v = poly.vertices;
      const std::size_t n = v.size();
      double worst = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < n; ++i) {
        const Point a = v[i], e = v[i + 1 == n ? 0 : i + 1] - a;
        worst = std::max(worst, -cross(e, p - a) / norm(e));
      }
      return worst;
    }
    double operator()(const Disc& d) const { return norm(p - d.center) - d.radius; }
    double operator()(const Superellipse& s) const {
      return superellipse_level(s, frame_of(s), p);
    }
    double operator()(const PowerGraph& g) const {
      const double graph = g.coefficient * abs_pow(std::max(p.x, 0.0), g.exponent) - p.y;
      return std::max({graph, -p.x, p.x - 1.0, -p.y, p.y - 1.0});
    }
  };
  return std::visit(V{p}, prim);
}

double closed_form_area(const ConvexPrimitive& prim) {
  struct V {
    double operator()(const Polygon& poly) const {
      const auto& v = poly.vertices;
      double twice = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) twice += cross(v[i], v[(i + 1) % v.size()]);
      return 0.5 * twice;
    }
    double operator()(const Disc& d) const { return std::numbers::pi * d.radius * d.radius; }
    double operator()(const Superellipse& s) const {
      const double p = s.exponent;
      const double g1 = std::tgamma(1.0 + 1.0 / p);
      return 4.0 * s.semi_a * s.semi_b * g1 * g1 / std::tgamma(1.0 + 2.0 / p);
    }
    double operator()(const PowerGraph& g) const {
      const double p = g.exponent, c = g.coefficient;
      if (c <= 1.0) return 1.0 - c / (p + 1.0);
      return std::pow(c, -1.0 / p) * p / (p + 1.0);
    }
  };
  return std::visit(V{}, prim);
}

void validate(const ConvexPrimitive& prim) {
  auto inside_square = [](const Extent& e, const std::string& what) {
    require(e.x0 >= -kContainTol && e.x1 <= 1.0 + kContainTol && e.y0 >= -kContainTol &&
                e.y1 <= 1.0 + kContainTol,
            what + " leaves the unit square");
  };
  struct V {
    decltype(inside_square)& check;
    void operator()(const Polygon& poly) const {
      const auto& v = poly.vertices;
      const std::size_t n = v.size();
      require(n >= 3, "polygon needs at least 3 vertices");
      for (const Point& p : v)
        require(std::isfinite(p.x) && std::isfinite(p.y), "polygon vertex not finite");
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          require(!(v[i] == v[j]), "polygon has repeated vertices");
      for (std::size_t i = 0; i < n; ++i) {
        const Point a = v[i], b = v[(i + 1) % n];
        for (std::size_t j = 0; j < n; ++j)
          require(cross(b - a, v[j] - a) >= -1e-14,
                  "polygon is not convex and counter-clockwise");
      }
      require(closed_form_area(poly) > 0.0, "polygon has zero area");
      check(extent_of(poly), "polygon");
    }
    void operator()(const Disc& d) const {
      require(std::isfinite(d.center.x) && std::isfinite(d.center.y), "disc center not finite");
      require(d.radius > 0.0 && std::isfinite(d.radius), "disc radius must be positive");
      check(extent_of(d), "disc");
    }
    void operator()(const Superellipse& s) const {
      require(s.semi_a > 0.0 && s.semi_b > 0.0 && std::isfinite(s.semi_a) &&
                  std::isfinite(s.semi_b),
              "superellipse semi-axes must be positive");
      require(s.exponent >= 2.0 && std::isfinite(s.exponent),
              "superellipse exponent must be at least 2");
      require(std::isfinite(s.rotation), "superellipse rotation not finite");
      check(extent_of(s), "superellipse");
    }
    void operator()(const PowerGraph& g) const {
      require(g.coefficient > 0.0 && std::isfinite(g.coefficient),
              "power graph coefficient must be positive");
      require(g.exponent >= 1.0 && std::isfinite(g.exponent),
              "power graph exponent must be at least 1");
    }
  };
  std::visit(V{inside_square}, prim);
}

std::string shape_name(const ConvexPrimitive& prim) {
  struct V {
    std::string operator()(const Polygon&) const { return "polygon"; }
    std::string operator()(const Disc&) const { return "disc"; }
    std::string operator()(const Superellipse&) const { return "superellipse"; }
    std::string operator()(const PowerGraph&) const { return "power_graph"; }
  };
  return std::visit(V{}, prim);
}

SetExpr SetExpr::primitive(ConvexPrimitive prim) {
  auto node = std::make_shared<Node>();
  node->op = Op::kPrimitive;
  node->leaf = std::move(prim);
  return SetExpr(std::move(node));
}

SetExpr SetExpr::union_of(std::vector<SetExpr> children) {
  auto node = std::make_shared<Node>();
  node->op = Op::kUnion;
  node->children = std::move(children);
  return SetExpr(std::move(node));
}

SetExpr SetExpr::intersection_of(std::vector<SetExpr> children) {
  auto node = std::make_shared<Node>();
  node->op = Op::kIntersection;
  node->children = std::move(children);
  return SetExpr(std::move(node));
}

SetExpr SetExpr::complement(SetExpr child) {
  auto node = std::make_shared<Node>();
  node->op = Op::kComplement;
  node->children.push_back(std::move(child));
  return SetExpr(std::move(node));
}

SetExpr SetExpr::unit_square() { return primitive(unit_square_polygon()); }
SetExpr SetExpr::empty() { return union_of({}); }

SetExpr::Op SetExpr::op() const { return node_->op; }

const ConvexPrimitive& SetExpr::leaf() const {
  require(node_->op == Op::kPrimitive, "set expression node is not a primitive");
  return node_->leaf;
}

const std::vector<SetExpr>& SetExpr::children() const { return node_->children; }

bool SetExpr::contains(Point p) const {
  switch (node_->op) {
    case Op::kPrimitive:
      return equiflow::contains(node_->leaf, p);
    case Op::kUnion:
      for (const SetExpr& c : node_->children)
        if (c.contains(p)) return true;
      return false;
    case Op::kIntersection:
      if (node_->children.empty()) return p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0;
      for (const SetExpr& c : node_->children)
        if (!c.contains(p)) return false;
      return true;
    case Op::kComplement:
      return p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0 &&
             !node_->children.front().contains(p);
  }
  return false;
}

void SetExpr::validate() const {
  switch (node_->op) {
    case Op::kPrimitive:
      equiflow::validate(node_->leaf);
      return;
    case Op::kComplement:
      require(node_->children.size() == 1, "complement takes exactly one child");
      [[fallthrough]];
    default:
      for (const SetExpr& c : node_->children) c.validate();
  }
}

bool SetExpr::has_complement() const {
  if (node_->op == Op::kComplement) return true;
  for (const SetExpr& c : node_->children)
    if (c.has_complement()) return true;
  return false;
}

std::vector<ConvexPrimitive> SetExpr::primitives() const {
  std::vector<ConvexPrimitive> out;
  if (node_->op == Op::kPrimitive) {
    out.push_back(node_->leaf);
    return out;
  }
  for (const SetExpr& c : node_->children) {
    auto sub = c.primitives();
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

std::string SetExpr::canonical() const {
  std::string out;
  auto point = [&](Point p) {
    out += '(';
    append_number(out, p.x);
    out += ',';
    append_number(out, p.y);
    out += ')';
  };
  switch (node_->op) {
    case Op::kPrimitive: {
      const ConvexPrimitive& prim = node_->leaf;
      out += shape_name(prim);
      out += '[';
      if (auto* poly = std::get_if<Polygon>(&prim)) {
        for (std::size_t i = 0; i < poly->vertices.size(); ++i) {
          if (i) out += ',';
          point(poly->vertices[i]);
        }
      } else if (auto* d = std::get_if<Disc>(&prim)) {
        point(d->center);
        out += ',';
        append_number(out, d->radius);
      } else if (auto* s = std::get_if<Superellipse>(&prim)) {
        point(s->center);
        for (double v : {s->semi_a, s->semi_b, s->exponent, s->rotation}) {
          out += ',';
          append_number(out, v);
        }
      } else if (auto* g = std::get_if<PowerGraph>(&prim)) {
        append_number(out, g->coefficient);
        out += ',';
        append_number(out, g->exponent);
      }
      out += ']';
      return out;
    }
    case Op::kUnion: out += "union("; break;
    case Op::kIntersection: out += "intersection("; break;
    case Op::kComplement: out += "complement("; break;
  }
  for (std::size_t i = 0; i < node_->children.size(); ++i) {
    if (i) out += ',';
    out += node_->children[i].canonical();
  }
  out += ')';
  return out;
}

IntervalSet clip_segment(const SetExpr& set, const Segment& seg) {
  const Interval unit{0.0, 1.0};
  switch (set.op()) {
    case SetExpr::Op::kPrimitive:
      return clip_segment_primitive(set.leaf(), seg);
    case SetExpr::Op::kUnion: {
      IntervalSet acc(unit);
      for (const SetExpr& c : set.children()) acc = acc.unite(clip_segment(c, seg));
      return acc;
    }
    case SetExpr::Op::kIntersection: {
      IntervalSet acc = clip_segment_primitive(unit_square_polygon(), seg);
      for (const SetExpr& c : set.children()) {
        if (acc.empty()) break;
        acc = acc.intersect(clip_segment(c, seg));
      }
      return acc;
    }
    case SetExpr::Op::kComplement:
      return clip_segment_primitive(unit_square_polygon(), seg)
          .subtract(clip_segment(set.children().front(), seg));
  }
  return IntervalSet(unit);
}

double clipped_fraction(const SetExpr& set, const Segment& seg) {
  return clip_segment(set, seg).measure();
}

double area(const SetExpr& set, const AreaOptions& options) {
  require(options.tol > 0.0 && options.tol <= 1e-3, "area tolerance must be in (0, 1e-3]");
  if (options.use_closed_form) {
    if (set.op() == SetExpr::Op::kPrimitive) return closed_form_area(set.leaf());
    if (set.op() == SetExpr::Op::kComplement &&
        set.children().front().op() == SetExpr::Op::kPrimitive)
      return 1.0 - closed_form_area(set.children().front().leaf());
  }
  std::vector<double> breaks;
  for (const ConvexPrimitive& prim : set.primitives()) {
    const Extent e = extent_of(prim);
    breaks.push_back(e.y0);
    breaks.push_back(e.y1);
    if (auto* poly = std::get_if<Polygon>(&prim))
      for (const Point& v : poly->vertices) breaks.push_back(v.y);
    if (auto* g = std::get_if<PowerGraph>(&prim))
      if (g->coefficient < 1.0) breaks.push_back(g->coefficient);
  }
  auto slice = [&](double h) { return clipped_fraction(set, {{0.0, h}, {1.0, h}}); };
  return integrate_adaptive(slice, 0.0, 1.0, options.tol, options.max_intervals, breaks).value;
}

}  // namespace equiflow
