#pragma once

#include "equiflow/geometry.hpp"
#include "equiflow/slope.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace equiflow {

enum class ProfileKind { kLinear, kCircleArc, kSuperellipseArc, kPowerArc, kCustom };
enum class PieceKind { kConvex, kConcave };

/// A graphical piece of the boundary: the points
///   origin + u theta + psi(u) theta_perp,  u in [u_lo, u_hi],
/// with psi convex. theta_perp points into the owning primitive, so for a
/// convex piece E lies on the theta_perp side and for a concave piece the
/// complement does.
struct BoundaryPiece {
  Point origin;
  Point theta{1.0, 0.0};
  Point theta_perp{0.0, 1.0};
  double u_lo = 0.0;
  double u_hi = 0.0;
  ProfileKind profile = ProfileKind::kLinear;
  /// Exponent of the profile around its flat point u = 0 (arcs and power
  /// graphs); unused for linear pieces.
  double exponent = 2.0;
  /// Scale parameters of the profile: semi-axis along and across the chart for
  /// arcs, the coefficient for power arcs.
  double scale_along = 0.0;
  double scale_across = 0.0;
  std::function<double(double)> custom;
  PieceKind kind = PieceKind::kConvex;
  int primitive = -1;
  /// Whether sampled points of the convex hull lie on the correct side. Recorded,
  /// not enforced.
  bool hull_in_set = true;

  double psi(double u) const;
  Point at(double u) const { return origin + u * theta + psi(u) * theta_perp; }
};

/// Pieces covering the boundary of E. Each primitive contributes its own
/// pieces (edges, four arcs per disc or superellipse); they are split where
/// other primitive boundaries cross and kept only where E differs on the two
/// sides. Square edges are candidates only under a complement. Throws
/// unresolved-tangency when two curved boundaries coincide along an arc.
std::vector<BoundaryPiece> boundary_pieces(const SetExpr& set);

struct DegenerateDirection {
  double angle = 0.0;   // in [0, pi)
  int piece = -1;       // index into boundary_pieces
  double order = 0.0;   // flatness order; infinity for straight pieces
};

struct DegenerateSlopeSet {
  std::vector<DegenerateDirection> directions;

  /// True when the flow direction (1, alpha) is within tol (radians) of a listed
  /// direction.
  bool contains_slope(double alpha, double tol = 1e-12) const;
};

/// Degenerate directions of a single piece for the exponent sigma. Throws
/// unsupported-profile for custom profiles.
std::vector<DegenerateDirection> degenerate_directions(const BoundaryPiece& piece, double sigma);

DegenerateSlopeSet degenerate_slopes(const SetExpr& set, double sigma);

/// Chart slope (theta_perp . (1, alpha)) / (theta . (1, alpha)); nullopt when
/// the denominator vanishes (flow parallel to the vertical of the chart).
std::optional<double> chart_slope(const BoundaryPiece& piece, double alpha);
std::optional<double> chart_slope(const BoundaryPiece& piece, const Slope& alpha);

/// Direction angle of the flow (1, alpha), in [0, pi).
double direction_angle(double alpha);

}  // namespace equiflow
