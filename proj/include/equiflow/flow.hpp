#pragma once

#include "equiflow/fixed.hpp"
#include "equiflow/geometry.hpp"
#include "equiflow/slope.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace equiflow {

/// One maximal straight piece of the orbit inside [0,1]^2.
struct TrajectorySegment {
  Segment seg;
  double t_begin = 0.0;
  double duration = 0.0;
};

struct Trajectory {
  Point start;
  double alpha = 0.0;
  double duration = 0.0;
  std::vector<TrajectorySegment> segments;
};

/// Streams the segments of t -> ({x1 + t}, {x2 + alpha t}). Wrap times are
/// tracked in fixed point: x-wraps at k - x1 and y-wraps at (j - x2) / |alpha|.
/// Negative alpha runs the reflected flow y -> 1 - y and maps segments back.
class FlowWalker {
 public:
  /// t_max bounds the horizon; exceeding the precision budget throws
  /// precision-exhausted.
  FlowWalker(Fixed x1, Fixed x2, const Slope& alpha, double t_max);
  FlowWalker(Point x, const Slope& alpha, double t_max);

  /// Next segment ending no later than the limit. Returns false once the walker
  /// sits at the limit.
  bool next(TrajectorySegment& out, const Fixed& limit);
  bool next(TrajectorySegment& out, double limit);

  const Fixed& time() const { return t_; }
  /// Current position (unreflected).
  Point position() const;

 private:
  unsigned bits_;
  bool reflect_;
  Fixed a_, inv_a_;
  Fixed x1_, x2_;
  Fixed t_;
  Point pos_;        // current position in the walker frame
  Fixed tx_, y_at_tx_;
  Fixed ty_, x_at_ty_;
  Fixed corner_tol_;
  double t_max_;
};

/// Budget check: throws precision-exhausted when the wrap count up to t_max
/// would exhaust the fractional bits.
void check_flow_budget(const Slope& alpha, double t_max);

Trajectory decompose(Point x, const Slope& alpha, double t);

/// Y^x_alpha(t) rounded to doubles.
Point flow_position(Point x, const Slope& alpha, double t);

double occupation_time(const SetExpr& set, Point x, const Slope& alpha, double t);

/// Occupation minus t times the area; the area is computed when not supplied.
double error_term(const SetExpr& set, Point x, const Slope& alpha, double t);
double error_term(const SetExpr& set, Point x, const Slope& alpha, double t, double set_area);

struct ErrorPoint {
  double t = 0.0;
  double delta = 0.0;
};

struct ErrorCurve {
  std::vector<ErrorPoint> points;
  double area = 0.0;
  std::string set_digest;
  std::string slope_digest;
  Point start;
};

/// One pass along the orbit; occupation is accumulated segment by segment and
/// read off at each grid time.
ErrorCurve error_curve(const SetExpr& set, Point x, const Slope& alpha,
                       std::span<const double> grid);
ErrorCurve error_curve(const SetExpr& set, Point x, const Slope& alpha,
                       std::span<const double> grid, double set_area);

using Density = std::function<double(double, double)>;

struct WeightedResult {
  double value = 0.0;
  double error = 0.0;
};

/// Integral of f along the orbit up to t, per-segment adaptive Gauss-Legendre
/// with local tolerance tol * duration / t.
WeightedResult weighted_occupation(const Density& f, Point x, const Slope& alpha, double t,
                                   double tol);

}  // namespace equiflow
