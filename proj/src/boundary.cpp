#include "equiflow/boundary.hpp"

#include "equiflow/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace equiflow {
namespace {

constexpr int kSamples = 512;
constexpr double kZero = 1e-13;
constexpr double kOffset = 1e-7;

Point rotate(Point p, double c, double s) { return {c * p.x - s * p.y, s * p.x + c * p.y}; }

BoundaryPiece linear_piece(Point a, Point b, int primitive) {
  BoundaryPiece piece;
  const double len = norm(b - a);
  piece.origin = a;
  piece.theta = (1.0 / len) * (b - a);
  piece.theta_perp = {-piece.theta.y, piece.theta.x};
  piece.u_lo = 0.0;
  piece.u_hi = len;
  piece.profile = ProfileKind::kLinear;
  piece.primitive = primitive;
  return piece;
}

void polygon_pieces(const Polygon& poly, int primitive, std::vector<BoundaryPiece>& out) {
  const auto& v = poly.vertices;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(linear_piece(v[i], v[(i + 1) % v.size()], primitive));
}

/// Four arcs of {|u/a|^p + |v/b|^p = 1}, each centred on an axis point and
/// spanning the region where that axis dominates.
void arc_pieces(Point center, double a, double b, double p, double rotation, ProfileKind profile,
                int primitive, std::vector<BoundaryPiece>& out) {
  const double c = std::cos(rotation), s = std::sin(rotation);
  const Point inward[4] = {{0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}, {1.0, 0.0}};
  for (int k = 0; k < 4; ++k) {
    const bool horizontal_chart = k % 2 == 0;
    const double along = horizontal_chart ? a : b;
    const double across = horizontal_chart ? b : a;
    const Point perp_local = inward[k];
    const Point theta_local{perp_local.y, -perp_local.x};
    BoundaryPiece piece;
    piece.origin = center + rotate(-across * perp_local, c, s);
    piece.theta = rotate(theta_local, c, s);
    piece.theta_perp = rotate(perp_local, c, s);
    const double half = along * std::pow(2.0, -1.0 / p);
    piece.u_lo = -half;
    piece.u_hi = half;
    piece.profile = profile;
    piece.exponent = p;
    piece.scale_along = along;
    piece.scale_across = across;
    piece.primitive = primitive;
    out.push_back(piece);
  }
}

void power_graph_pieces(const PowerGraph& g, int primitive, std::vector<BoundaryPiece>& out) {
  const double xe = std::min(1.0, std::pow(g.coefficient, -1.0 / g.exponent));
  BoundaryPiece curve;
  curve.origin = {0.0, 0.0};
  curve.u_lo = 0.0;
  curve.u_hi = xe;
  curve.profile = ProfileKind::kPowerArc;
  curve.exponent = g.exponent;
  curve.scale_across = g.coefficient;
  curve.primitive = primitive;
  out.push_back(curve);
  out.push_back(linear_piece({0.0, 1.0}, {0.0, 0.0}, primitive));
  out.push_back(linear_piece({xe, 1.0}, {0.0, 1.0}, primitive));
  if (g.coefficient < 1.0) out.push_back(linear_piece({1.0, g.coefficient}, {1.0, 1.0}, primitive));
}

double normalize_angle(double angle) {
  angle = std::fmod(angle, std::numbers::pi);
  if (angle < 0.0) angle += std::numbers::pi;
  if (angle >= std::numbers::pi - 1e-15) angle = 0.0;
  return angle;
}

double angle_of(Point d) { return normalize_angle(std::atan2(d.y, d.x)); }

double angular_distance(double a, double b) {
  const double d = std::abs(a - b);
  return std::min(d, std::numbers::pi - d);
}

int sign_of(double g) { return g > kZero ? 1 : (g < -kZero ? -1 : 0); }

}  // namespace

double BoundaryPiece::psi(double u) const {
  switch (profile) {
    case ProfileKind::kLinear:
      return 0.0;
    case ProfileKind::kCircleArc:
    case ProfileKind::kSuperellipseArc: {
      const double r = std::min(1.0, std::pow(std::abs(u) / scale_along, exponent));
      return scale_across * (1.0 - std::pow(1.0 - r, 1.0 / exponent));
    }
    case ProfileKind::kPowerArc:
      return scale_across * std::pow(std::max(u, 0.0), exponent);
    case ProfileKind::kCustom:
      if (!custom) fail(ErrorKind::kUnsupportedProfile, "custom piece without a profile");
      return custom(u);
  }
  return 0.0;
}

std::vector<BoundaryPiece> boundary_pieces(const SetExpr& set) {
  set.validate();
  const std::vector<ConvexPrimitive> prims = set.primitives();
  const bool with_square = set.has_complement();

  std::vector<BoundaryPiece> candidates;
  for (std::size_t i = 0; i < prims.size(); ++i) {
    const int idx = static_cast<int>(i);
    if (auto* poly = std::get_if<Polygon>(&prims[i])) {
      polygon_pieces(*poly, idx, candidates);
    } else if (auto* d = std::get_if<Disc>(&prims[i])) {
      arc_pieces(d->center, d->radius, d->radius, 2.0, 0.0, ProfileKind::kCircleArc, idx,
                 candidates);
    } else if (auto* s = std::get_if<Superellipse>(&prims[i])) {
      arc_pieces(s->center, s->semi_a, s->semi_b, s->exponent, s->rotation,
                 ProfileKind::kSuperellipseArc, idx, candidates);
    } else if (auto* g = std::get_if<PowerGraph>(&prims[i])) {
      power_graph_pieces(*g, idx, candidates);
    }
  }
  if (with_square) polygon_pieces(unit_square_polygon(), -1, candidates);

  // Level functions of every participating boundary; index -1 is the square.
  const ConvexPrimitive square = unit_square_polygon();
  auto level_of = [&](int j, Point p) {
    return j < 0 ? level(square, p) : level(prims[static_cast<std::size_t>(j)], p);
  };
  std::vector<int> others;
  for (std::size_t j = 0; j < prims.size(); ++j) others.push_back(static_cast<int>(j));
  if (with_square) others.push_back(-1);

  std::vector<BoundaryPiece> pieces;
  for (const BoundaryPiece& cand : candidates) {
    const bool straight = cand.profile == ProfileKind::kLinear;
    std::vector<double> splits{cand.u_lo, cand.u_hi};
    for (int j : others) {
      if (j == cand.primitive) continue;
      const ConvexPrimitive& other = j < 0 ? square : prims[static_cast<std::size_t>(j)];
      if (straight) {
        // Vertices lying on the carrier line of this piece.
        if (auto* poly = std::get_if<Polygon>(&other)) {
          for (const Point& v : poly->vertices) {
            const Point w = v - cand.origin;
            if (std::abs(dot(w, cand.theta_perp)) > 1e-12) continue;
            const double u = dot(w, cand.theta);
            if (u > cand.u_lo && u < cand.u_hi) splits.push_back(u);
          }
        }
      }
      auto g = [&](double u) { return level_of(j, cand.at(u)); };
      const double step = (cand.u_hi - cand.u_lo) / kSamples;
      double last_u = cand.u_lo;
      int last_sign = sign_of(g(cand.u_lo));
      int zero_run = last_sign == 0 ? 1 : 0;
      for (int k = 1; k <= kSamples; ++k) {
        const double u = k == kSamples ? cand.u_hi : cand.u_lo + k * step;
        const int sgn = sign_of(g(u));
        if (sgn == 0) {
          ++zero_run;
          if (!straight && zero_run >= 3)
            fail(ErrorKind::kUnresolvedTangency,
                 "boundary of primitive " + std::to_string(cand.primitive) +
                     " coincides with primitive " + std::to_string(j) + " along an arc");
          continue;
        }
        if (last_sign != 0 && sgn != last_sign && zero_run <= 1) {
          double a = last_u, b = u;
          for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (a + b);
            if (mid == a || mid == b) break;
            if (sign_of(g(mid)) == last_sign) a = mid; else b = mid;
          }
          splits.push_back(0.5 * (a + b));
        }
        last_sign = sgn;
        last_u = u;
        zero_run = 0;
      }
    }
    std::sort(splits.begin(), splits.end());
    for (std::size_t k = 0; k + 1 < splits.size(); ++k) {
      const double lo = splits[k], hi = splits[k + 1];
      if (hi - lo < 1e-12) continue;
      BoundaryPiece sub = cand;
      sub.u_lo = lo;
      sub.u_hi = hi;
      const Point mid = sub.at(0.5 * (lo + hi));
      const bool inner = set.contains(mid + kOffset * sub.theta_perp);
      const bool outer = set.contains(mid - kOffset * sub.theta_perp);
      if (inner == outer) continue;
      sub.kind = inner ? PieceKind::kConvex : PieceKind::kConcave;
      // Sampled convex-hull points, nudged to the owning side.
      const Point a = sub.at(lo), b = sub.at(hi);
      const Point chord_mid = 0.5 * (a + b);
      bool hull_ok = true;
      for (const Point& h : {a + 0.25 * (b - a), chord_mid, a + 0.75 * (b - a),
                             0.5 * (chord_mid + mid)}) {
        if (set.contains(h + kOffset * sub.theta_perp) != inner) hull_ok = false;
      }
      sub.hull_in_set = hull_ok;
      bool duplicate = false;
      if (straight) {
        for (const BoundaryPiece& q : pieces) {
          if (q.profile != ProfileKind::kLinear) continue;
          const Point qa = q.at(q.u_lo), qb = q.at(q.u_hi);
          const bool same = (norm(qa - a) < 1e-12 && norm(qb - b) < 1e-12) ||
                            (norm(qa - b) < 1e-12 && norm(qb - a) < 1e-12);
          if (same) {
            duplicate = true;
            break;
          }
        }
      }
      if (!duplicate) pieces.push_back(std::move(sub));
    }
  }
  return pieces;
}

std::vector<DegenerateDirection> degenerate_directions(const BoundaryPiece& piece, double sigma) {
  std::vector<DegenerateDirection> out;
  const double inf = std::numeric_limits<double>::infinity();
  switch (piece.profile) {
    case ProfileKind::kLinear:
      out.push_back({angle_of(piece.theta), -1, inf});
      break;
    case ProfileKind::kCircleArc:
      break;
    case ProfileKind::kSuperellipseArc:
      // psi(u) ~ |u|^p / p near the axis point; order p flatness there only.
      if (sigma < piece.exponent && piece.u_lo <= 0.0 && piece.u_hi >= 0.0)
        out.push_back({angle_of(piece.theta), -1, piece.exponent});
      break;
    case ProfileKind::kPowerArc:
      if (piece.exponent == 1.0) {
        out.push_back({angle_of(piece.theta + piece.scale_across * piece.theta_perp), -1, inf});
      } else if (sigma < piece.exponent && piece.u_lo <= 0.0) {
        out.push_back({angle_of(piece.theta), -1, piece.exponent});
      }
      break;
    case ProfileKind::kCustom:
      fail(ErrorKind::kUnsupportedProfile, "custom profile has no degeneracy classification");
  }
  return out;
}

DegenerateSlopeSet degenerate_slopes(const SetExpr& set, double sigma) {
  require(sigma >= 2.0, "sigma must be at least 2");
  const std::vector<BoundaryPiece> pieces = boundary_pieces(set);
  DegenerateSlopeSet result;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    for (DegenerateDirection d : degenerate_directions(pieces[i], sigma)) {
      d.piece = static_cast<int>(i);
      const bool seen = std::any_of(
          result.directions.begin(), result.directions.end(),
          [&](const DegenerateDirection& e) { return angular_distance(e.angle, d.angle) < 1e-13; });
      if (!seen) result.directions.push_back(d);
    }
  }
  std::sort(result.directions.begin(), result.directions.end(),
            [](const DegenerateDirection& a, const DegenerateDirection& b) { return a.angle < b.angle; });
  return result;
}

bool DegenerateSlopeSet::contains_slope(double alpha, double tol) const {
  const double a = direction_angle(alpha);
  return std::any_of(directions.begin(), directions.end(), [&](const DegenerateDirection& d) {
    return angular_distance(d.angle, a) <= tol;
  });
}

std::optional<double> chart_slope(const BoundaryPiece& piece, double alpha) {
  const Point flow{1.0, alpha};
  const double den = dot(piece.theta, flow);
  if (std::abs(den) <= 1e-15 * norm(flow)) return std::nullopt;
  return dot(piece.theta_perp, flow) / den;
}

std::optional<double> chart_slope(const BoundaryPiece& piece, const Slope& alpha) {
  return chart_slope(piece, alpha.to_double());
}

double direction_angle(double alpha) { return normalize_angle(std::atan(alpha)); }

}  // namespace equiflow
