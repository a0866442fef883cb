#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "equiflow/boundary.hpp"
#include "equiflow/error.hpp"

#include <numbers>

using namespace equiflow;

namespace {

std::vector<double> angles(const DegenerateSlopeSet& s) {
  std::vector<double> out;
  for (const auto& d : s.directions) out.push_back(d.angle);
  return out;
}

BoundaryPiece chart(Point theta) {
  BoundaryPiece p;
  p.theta = theta;
  p.theta_perp = {-theta.y, theta.x};
  return p;
}

}  // namespace

TEST_CASE("axis-aligned square has four straight convex edges") {
  const SetExpr sq = SetExpr::primitive(make_rectangle(0.2, 0.6, 0.3, 0.7));
  const auto pieces = boundary_pieces(sq);
  REQUIRE(pieces.size() == 4);
  for (const auto& p : pieces) {
    CHECK(p.profile == ProfileKind::kLinear);
    CHECK(p.kind == PieceKind::kConvex);
    CHECK(p.psi(0.5 * (p.u_lo + p.u_hi)) == 0.0);
  }
}

TEST_CASE("disc boundary is covered by convex arcs") {
  const SetExpr d = SetExpr::primitive(Disc{{0.5, 0.5}, 0.25});
  const auto pieces = boundary_pieces(d);
  CHECK(pieces.size() >= 2);
  double covered = 0.0;
  for (const auto& p : pieces) {
    CHECK(p.profile == ProfileKind::kCircleArc);
    CHECK(p.kind == PieceKind::kConvex);
    // Arc angle subtended by the piece.
    const Point a = p.at(p.u_lo) - Point{0.5, 0.5}, b = p.at(p.u_hi) - Point{0.5, 0.5};
    covered += std::abs(std::atan2(cross(a, b), dot(a, b)));
  }
  CHECK(covered == doctest::Approx(2 * std::numbers::pi).epsilon(1e-9));
}

TEST_CASE("disc minus an overlapping disc splits at the circle intersections") {
  const Point c1{0.5, 0.5}, c2{0.75, 0.5};
  const double r1 = 0.3, r2 = 0.15;
  const SetExpr e = SetExpr::intersection_of(
      {SetExpr::primitive(Disc{c1, r1}), SetExpr::complement(SetExpr::primitive(Disc{c2, r2}))});
  // Intersection points of the two circles.
  const double d = norm(c2 - c1);
  const double a = (r1 * r1 - r2 * r2 + d * d) / (2 * d);
  const double h = std::sqrt(r1 * r1 - a * a);
  const Point m{c1.x + a, c1.y};
  const Point i1{m.x, m.y + h}, i2{m.x, m.y - h};

  int convex = 0, concave = 0;
  std::vector<Point> ends;
  for (const auto& p : boundary_pieces(e)) {
    const Point mid = p.at(0.5 * (p.u_lo + p.u_hi));
    if (p.kind == PieceKind::kConvex) {
      ++convex;
      CHECK(std::abs(norm(mid - c1) - r1) < 1e-9);
    } else {
      ++concave;
      CHECK(std::abs(norm(mid - c2) - r2) < 1e-9);
    }
    ends.push_back(p.at(p.u_lo));
    ends.push_back(p.at(p.u_hi));
  }
  CHECK(convex >= 1);
  CHECK(concave >= 1);
  auto near = [&](Point q) {
    return std::any_of(ends.begin(), ends.end(), [&](Point e) { return norm(e - q) < 1e-9; });
  };
  CHECK(near(i1));
  CHECK(near(i2));
}

TEST_CASE("degenerate slopes of primitives") {
  const auto square = degenerate_slopes(SetExpr::primitive(unit_square_polygon()), 2.0);
  const auto sa = angles(square);
  REQUIRE(sa.size() == 2);
  CHECK(sa[0] == doctest::Approx(0.0));
  CHECK(sa[1] == doctest::Approx(std::numbers::pi / 2));
  CHECK(square.contains_slope(0.0));

  CHECK(degenerate_slopes(SetExpr::primitive(Disc{{0.5, 0.5}, 0.25}), 2.0).directions.empty());

  const SetExpr se = SetExpr::primitive(Superellipse{{0.5, 0.5}, 0.3, 0.2, 4.0, 0.0});
  CHECK(degenerate_slopes(se, 4.5).directions.empty());
  const auto s3 = angles(degenerate_slopes(se, 3.0));
  REQUIRE(s3.size() == 2);
  CHECK(s3[0] == doctest::Approx(0.0));
  CHECK(s3[1] == doctest::Approx(std::numbers::pi / 2));
  CHECK_THROWS_AS(degenerate_slopes(se, 1.5), Error);
}

TEST_CASE("power graph flatness") {
  const SetExpr g = SetExpr::primitive(PowerGraph{1.0, 3.0});
  // y = x^3 is flat to order 3 at the origin: degenerate for sigma < 3.
  bool horizontal = false;
  for (double a : angles(degenerate_slopes(g, 2.5))) horizontal |= std::abs(a) < 1e-12;
  CHECK(horizontal);
  bool again = false;
  for (const auto& d : degenerate_slopes(g, 3.5).directions)
    again |= std::abs(d.angle) < 1e-12 && std::isfinite(d.order);
  CHECK_FALSE(again);
}

TEST_CASE("chart slopes") {
  CHECK(*chart_slope(chart({1, 0}), 0.5) == doctest::Approx(0.5));
  CHECK_FALSE(chart_slope(chart({0, 1}), 0.0).has_value());
  const double r = std::sqrt(0.5);
  CHECK(*chart_slope(chart({r, r}), 1.0) == doctest::Approx(0.0));
}

TEST_CASE("coincident curved boundaries are reported") {
  const SetExpr d = SetExpr::primitive(Disc{{0.5, 0.5}, 0.25});
  const SetExpr twice = SetExpr::union_of({d, SetExpr::intersection_of({d, SetExpr::primitive(Disc{{0.5, 0.5}, 0.25})})});
  CHECK_THROWS_WITH_AS(boundary_pieces(twice), doctest::Contains("unresolved-tangency"), Error);
}
